#pragma once

#include "dupsparse/cluster.hpp"
#include "dupsparse/comm.hpp"
#include "dupsparse/generators.hpp"
#include "dupsparse/graph.hpp"
#include "dupsparse/io.hpp"
#include "dupsparse/partition.hpp"
#include "dupsparse/rng.hpp"
#include "dupsparse/spanner.hpp"
#include "dupsparse/sparsifier.hpp"
#include "dupsparse/spectral.hpp"
#include "dupsparse/sweep.hpp"
#include "dupsparse/verify.hpp"

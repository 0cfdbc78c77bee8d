#pragma once

// Everything except the command line.
#include "pebbling/cover.hpp"
#include "pebbling/error.hpp"
#include "pebbling/oracle.hpp"
#include "pebbling/path_partition.hpp"
#include "pebbling/solvability.hpp"
#include "pebbling/tree.hpp"

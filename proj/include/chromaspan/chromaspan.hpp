#pragma once

// Localized smallest color-spanning objects: interval, square, rectangle,
// equilateral triangle and (1+eps) circle. io.hpp (needs nlohmann/json) and
// oracle.hpp (brute force) are separate.

#include "chromaspan/aggregate_index.hpp"
#include "chromaspan/answer.hpp"
#include "chromaspan/circles.hpp"
#include "chromaspan/envelope.hpp"
#include "chromaspan/geometry.hpp"
#include "chromaspan/intervals.hpp"
#include "chromaspan/range_min.hpp"
#include "chromaspan/rectangles.hpp"
#include "chromaspan/squares.hpp"
#include "chromaspan/triangles.hpp"

#pragma once

#include "mtbalign/bitmap.hpp"
#include "mtbalign/core_image.hpp"
#include "mtbalign/parallel.hpp"
#include "mtbalign/pipeline.hpp"
#include "mtbalign/pyramid.hpp"
#include "mtbalign/search.hpp"
#include "mtbalign/threshold.hpp"

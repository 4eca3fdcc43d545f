#pragma once

#include "circle/core.hpp"
#include "circle/arith.hpp"
#include "circle/quadrature.hpp"
#include "circle/cutoffs.hpp"
#include "circle/expsum.hpp"
#include "circle/fft.hpp"
#include "circle/estimates.hpp"
#include "circle/vaughan.hpp"
#include "circle/bounds.hpp"
#include "circle/majorarc.hpp"
#include "circle/harness.hpp"

#pragma once

#include "oceanlab/params.hpp"
#include "oceanlab/grid.hpp"
#include "oceanlab/spline.hpp"
#include "oceanlab/quadrature.hpp"
#include "oceanlab/coriolis.hpp"
#include "oceanlab/windstress.hpp"
#include "oceanlab/validation.hpp"
#include "oceanlab/fft.hpp"
#include "oceanlab/ekman.hpp"
#include "oceanlab/interior.hpp"
#include "oceanlab/residual.hpp"
#include "oceanlab/rossby.hpp"
#include "oceanlab/poincare.hpp"
#include "oceanlab/thermocline.hpp"
#include "oceanlab/io.hpp"

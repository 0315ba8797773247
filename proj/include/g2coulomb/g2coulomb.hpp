#pragma once

#include "g2coulomb/coulomb.hpp"
#include "g2coulomb/generators.hpp"
#include "g2coulomb/json_io.hpp"
#include "g2coulomb/laguerre.hpp"
#include "g2coulomb/qes.hpp"
#include "g2coulomb/quadrature.hpp"
#include "g2coulomb/spectral.hpp"
#include "g2coulomb/verify.hpp"

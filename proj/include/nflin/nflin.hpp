#pragma once

#include "errors.hpp"
#include "gaussian_rational.hpp"
#include "multiindex.hpp"
#include "polynomial.hpp"
#include "polyexp.hpp"
#include "spectrum.hpp"
#include "resonance.hpp"
#include "normal_form.hpp"
#include "parent_system.hpp"
#include "solver.hpp"
#include "numeric_oracle.hpp"
#include "io.hpp"

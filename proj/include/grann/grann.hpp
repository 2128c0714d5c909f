#pragma once

#include "errors.hpp"
#include "rational.hpp"
#include "fp.hpp"
#include "field.hpp"
#include "rng.hpp"
#include "ordering.hpp"
#include "poly.hpp"
#include "poly_text.hpp"
#include "matrix.hpp"
#include "kernel.hpp"
#include "expr.hpp"
#include "oracle.hpp"
#include "annihilator.hpp"
#include "reconstruct.hpp"
#include "report.hpp"

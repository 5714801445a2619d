#pragma once

#include "error.hpp"
#include "finite_field.hpp"
#include "poly_fq.hpp"
#include "factor.hpp"
#include "rational_function.hpp"
#include "poly_over_k.hpp"
#include "exceptional.hpp"
#include "text.hpp"
#include "harness.hpp"
#include "report.hpp"

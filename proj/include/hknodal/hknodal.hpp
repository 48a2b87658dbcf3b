#pragma once

#include "hknodal/bundle.hpp"
#include "hknodal/cycle.hpp"
#include "hknodal/error.hpp"
#include "hknodal/fp_matrix.hpp"
#include "hknodal/hilbert.hpp"
#include "hknodal/laurent.hpp"
#include "hknodal/parse.hpp"
#include "hknodal/polynomial.hpp"
#include "hknodal/prime_field.hpp"

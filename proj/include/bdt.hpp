#pragma once

// Umbrella header.

#include "bdt/core/errors.hpp"
#include "bdt/core/gcd.hpp"
#include "bdt/core/monomial.hpp"
#include "bdt/core/polynomial.hpp"
#include "bdt/core/rational_function.hpp"
#include "bdt/core/registry.hpp"
#include "bdt/ore/diff_operator.hpp"
#include "bdt/ore/division.hpp"
#include "bdt/algebra/word_poly.hpp"
#include "bdt/algebra/generator_table.hpp"
#include "bdt/wave/kernel.hpp"
#include "bdt/wave/wavefunction.hpp"
#include "bdt/qhs/system.hpp"
#include "bdt/qhs/pair.hpp"
#include "bdt/qhs/dressing.hpp"
#include "bdt/qhs/transform.hpp"
#include "bdt/session/parser.hpp"
#include "bdt/session/session.hpp"
#include "bdt/session/report.hpp"
#include "bdt/session/runner.hpp"
#include "bdt/session/builtin.hpp"

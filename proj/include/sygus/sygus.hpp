// Umbrella header.
#pragma once

#include "sygus/cegis.hpp"
#include "sygus/conjecture.hpp"
#include "sygus/enumerator.hpp"
#include "sygus/error.hpp"
#include "sygus/grammar.hpp"
#include "sygus/lia/omega.hpp"
#include "sygus/lia/solver.hpp"
#include "sygus/outcome.hpp"
#include "sygus/problem.hpp"
#include "sygus/sexpr.hpp"
#include "sygus/simplify.hpp"
#include "sygus/single_invocation.hpp"
#include "sygus/term.hpp"
#include "sygus/term_io.hpp"
#include "sygus/verifier.hpp"

#pragma once

#include "infectio/calculus.hpp"
#include "infectio/checker.hpp"
#include "infectio/error.hpp"
#include "infectio/formula.hpp"
#include "infectio/normaliser.hpp"
#include "infectio/proof.hpp"
#include "infectio/proof_io.hpp"
#include "infectio/search.hpp"
#include "infectio/semantics.hpp"

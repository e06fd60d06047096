#pragma once

// Umbrella header.

#include "fuzzyt/activation.hpp"
#include "fuzzyt/algebra.hpp"
#include "fuzzyt/bridge.hpp"
#include "fuzzyt/concept.hpp"
#include "fuzzyt/entailment.hpp"
#include "fuzzyt/error.hpp"
#include "fuzzyt/harness.hpp"
#include "fuzzyt/interpretation.hpp"
#include "fuzzyt/interpretation_io.hpp"
#include "fuzzyt/logic.hpp"
#include "fuzzyt/network.hpp"
#include "fuzzyt/parallel.hpp"
#include "fuzzyt/syntax.hpp"
#include "fuzzyt/weighted_kb.hpp"

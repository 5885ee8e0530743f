#pragma once

// Umbrella header for the FCMJ toolkit.

#include "fcmj/errors.hpp"
#include "fcmj/model.hpp"
#include "fcmj/numtheory.hpp"
#include "fcmj/objective.hpp"
#include "fcmj/rational.hpp"
#include "fcmj/reduction.hpp"
#include "fcmj/solver.hpp"

#ifndef TRANSITION_TRANSITION_HPP
#define TRANSITION_TRANSITION_HPP

#include "transition/config.hpp"
#include "transition/derivative.hpp"
#include "transition/errors.hpp"
#include "transition/model.hpp"
#include "transition/multiperiod.hpp"
#include "transition/optimizer.hpp"
#include "transition/policy.hpp"
#include "transition/report.hpp"
#include "transition/sensitivity.hpp"

#endif // TRANSITION_TRANSITION_HPP

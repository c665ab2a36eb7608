#pragma once

#include "wickenum/errors.hpp"
#include "wickenum/rational.hpp"
#include "wickenum/multipoly.hpp"
#include "wickenum/weights.hpp"
#include "wickenum/exact_enum.hpp"
#include "wickenum/log_value.hpp"
#include "wickenum/sphere_critical.hpp"
#include "wickenum/asymptotics.hpp"
#include "wickenum/colorings.hpp"

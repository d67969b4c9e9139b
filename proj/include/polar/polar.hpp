#pragma once

#include "polar/affective.hpp"
#include "polar/distribution.hpp"
#include "polar/dominance.hpp"
#include "polar/error.hpp"
#include "polar/index.hpp"
#include "polar/salience.hpp"

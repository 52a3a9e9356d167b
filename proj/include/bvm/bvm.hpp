#pragma once

// Umbrella header: finite boolean-valued models of set theory, desk scale.

#include "bvm/algebra.hpp"
#include "bvm/hf.hpp"
#include "bvm/laws.hpp"
#include "bvm/logic.hpp"
#include "bvm/rational.hpp"
#include "bvm/reference.hpp"
#include "bvm/scott.hpp"
#include "bvm/states.hpp"
#include "bvm/textio.hpp"
#include "bvm/universe.hpp"

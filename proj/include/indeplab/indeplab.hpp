#pragma once

#include "indeplab/bits.hpp"
#include "indeplab/config.hpp"
#include "indeplab/constructions.hpp"
#include "indeplab/diagonal.hpp"
#include "indeplab/dovetail.hpp"
#include "indeplab/encoding.hpp"
#include "indeplab/engine.hpp"
#include "indeplab/machine.hpp"
#include "indeplab/profile.hpp"
#include "indeplab/sexpr.hpp"
#include "indeplab/theory.hpp"

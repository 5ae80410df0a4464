#pragma once

#include "qlearn/derivative.hpp"
#include "qlearn/dynamics.hpp"
#include "qlearn/error.hpp"
#include "qlearn/grid.hpp"
#include "qlearn/hydrodynamics.hpp"
#include "qlearn/learner.hpp"
#include "qlearn/madelung.hpp"
#include "qlearn/physics.hpp"
#include "qlearn/potential.hpp"
#include "qlearn/wavefunction.hpp"

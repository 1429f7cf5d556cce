#pragma once

// Umbrella header for the MCDAS library: radar-derived kinematics, rule-table
// mode selection, duty-cycle longitudinal control, joint front/rear
// constant-velocity tracking, sigmoidal lane-change and parking trajectories,
// and the scenario simulation harness.

#include "mcdas/control.hpp"
#include "mcdas/decision.hpp"
#include "mcdas/export.hpp"
#include "mcdas/kinematics.hpp"
#include "mcdas/random.hpp"
#include "mcdas/scenario.hpp"
#include "mcdas/simulation.hpp"
#include "mcdas/tracking.hpp"
#include "mcdas/trajectory.hpp"
#include "mcdas/units.hpp"

#pragma once

#include "acs.hpp"
#include "bochner.hpp"
#include "catalog.hpp"
#include "classify.hpp"
#include "curvature4.hpp"
#include "frame_algebra.hpp"
#include "nijenhuis.hpp"
#include "suite.hpp"
#include "twistor_tensors.hpp"

namespace twistorlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace twistorlab

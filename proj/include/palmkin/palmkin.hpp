#pragma once

#include "palmkin/cases.hpp"
#include "palmkin/config.hpp"
#include "palmkin/error.hpp"
#include "palmkin/hand.hpp"
#include "palmkin/io.hpp"
#include "palmkin/kinematics.hpp"
#include "palmkin/overlap.hpp"
#include "palmkin/params.hpp"
#include "palmkin/report.hpp"
#include "palmkin/report_json.hpp"
#include "palmkin/sampling.hpp"
#include "palmkin/voxelize.hpp"

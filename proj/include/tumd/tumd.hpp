#pragma once

#include "tumd/config.hpp"
#include "tumd/density.hpp"
#include "tumd/error.hpp"
#include "tumd/features.hpp"
#include "tumd/ingest.hpp"
#include "tumd/kinematics.hpp"
#include "tumd/kmeans.hpp"
#include "tumd/parallel.hpp"
#include "tumd/pipeline.hpp"
#include "tumd/plots.hpp"
#include "tumd/report.hpp"
#include "tumd/scoring.hpp"
#include "tumd/stats.hpp"
#include "tumd/svg.hpp"
#include "tumd/synth.hpp"
#include "tumd/trajectory.hpp"
#include "tumd/describe.hpp"
#include "tumd/cli.hpp"

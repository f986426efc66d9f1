#pragma once

#include "omm/config.hpp"
#include "omm/csv.hpp"
#include "omm/engine.hpp"
#include "omm/errors.hpp"
#include "omm/gaussian.hpp"
#include "omm/layout.hpp"
#include "omm/measures.hpp"
#include "omm/model.hpp"
#include "omm/presets.hpp"
#include "omm/stability.hpp"
#include "omm/validity.hpp"

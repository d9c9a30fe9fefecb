#pragma once

#include "padereg/datagen.hpp"
#include "padereg/dataset.hpp"
#include "padereg/diagnostics.hpp"
#include "padereg/error.hpp"
#include "padereg/fitting.hpp"
#include "padereg/io.hpp"
#include "padereg/linsys.hpp"
#include "padereg/rational.hpp"
#include "padereg/selection.hpp"
#include "padereg/weibull.hpp"

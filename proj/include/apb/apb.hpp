#pragma once

// Umbrella header for the library (the CLI lives in apb/cli.hpp).

#include "apb/errors.hpp"
#include "apb/exactq.hpp"
#include "apb/families.hpp"
#include "apb/fps.hpp"
#include "apb/opcalc.hpp"
#include "apb/theorems.hpp"
#include "apb/verdict.hpp"

#pragma once

#include "caches.hpp"
#include "construct.hpp"
#include "exhaustive.hpp"
#include "generators.hpp"
#include "instance.hpp"
#include "io.hpp"
#include "lap.hpp"
#include "meta.hpp"
#include "neighborhoods.hpp"
#include "rational.hpp"
#include "rng.hpp"

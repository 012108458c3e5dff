// Umbrella header for the orbirr library.
#pragma once

#include "orbirr/analysis.hpp"
#include "orbirr/cyclotomic.hpp"
#include "orbirr/graded.hpp"
#include "orbirr/kawasaki.hpp"
#include "orbirr/oracle.hpp"
#include "orbirr/rational.hpp"
#include "orbirr/scene_io.hpp"
#include "orbirr/scenes.hpp"
#include "orbirr/sector.hpp"
#include "orbirr/twist_poly.hpp"
#include "orbirr/verify.hpp"

#pragma once

#include "newton_atlas/audit.hpp"
#include "newton_atlas/basin.hpp"
#include "newton_atlas/classify.hpp"
#include "newton_atlas/complex_sphere.hpp"
#include "newton_atlas/errors.hpp"
#include "newton_atlas/image.hpp"
#include "newton_atlas/newton.hpp"
#include "newton_atlas/normal_form.hpp"
#include "newton_atlas/orbit.hpp"
#include "newton_atlas/parallel.hpp"
#include "newton_atlas/polynomial.hpp"
#include "newton_atlas/rational_map.hpp"
#include "newton_atlas/rays.hpp"
#include "newton_atlas/scan.hpp"
#include "newton_atlas/serialize.hpp"
#include "newton_atlas/verify.hpp"

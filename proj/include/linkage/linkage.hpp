#pragma once

#include "linkage/arm.hpp"
#include "linkage/emit.hpp"
#include "linkage/geometry.hpp"
#include "linkage/quad.hpp"
#include "linkage/svg.hpp"

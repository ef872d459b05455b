#pragma once

#include "inedor/constants.hpp"
#include "inedor/contact_shift.hpp"
#include "inedor/error.hpp"
#include "inedor/hydrogen.hpp"
#include "inedor/lineshape.hpp"
#include "inedor/linewidth.hpp"
#include "inedor/model.hpp"
#include "inedor/oracle.hpp"
#include "inedor/quadrature.hpp"
#include "inedor/rabi.hpp"
#include "inedor/roots.hpp"
#include "inedor/spectrum.hpp"

#pragma once

#include "monge/audit.hpp"
#include "monge/elliptic.hpp"
#include "monge/errors.hpp"
#include "monge/field.hpp"
#include "monge/finite_difference.hpp"
#include "monge/grid.hpp"
#include "monge/implicit.hpp"
#include "monge/profile.hpp"
#include "monge/quadrature.hpp"
#include "monge/residual.hpp"

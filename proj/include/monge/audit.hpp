#pragma once

#include "monge/audit/amplitude.hpp"
#include "monge/audit/antiderivative.hpp"
#include "monge/audit/field_audits.hpp"
#include "monge/audit/phi_field.hpp"
#include "monge/audit/plus_branch.hpp"
#include "monge/audit/report.hpp"

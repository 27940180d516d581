#pragma once

#include "frobtrace/error.hpp"
#include "frobtrace/field.hpp"
#include "frobtrace/poly.hpp"
#include "frobtrace/linalg.hpp"
#include "frobtrace/forms.hpp"
#include "frobtrace/cartier.hpp"
#include "frobtrace/oracle.hpp"
#include "frobtrace/projective.hpp"
#include "frobtrace/fsplit.hpp"
#include "frobtrace/parse.hpp"
#include "frobtrace/fermat.hpp"
#include "frobtrace/checks.hpp"

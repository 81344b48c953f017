#pragma once

#include "ppacert/dual_certificate.hpp"
#include "ppacert/linalg.hpp"
#include "ppacert/pep.hpp"
#include "ppacert/ppa.hpp"
#include "ppacert/rational.hpp"
#include "ppacert/sym_matrix.hpp"
#include "ppacert/worst_case.hpp"

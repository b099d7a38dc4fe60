#ifndef FPGRP_HPP_
#define FPGRP_HPP_

#include "fpgrp/budget.hpp"
#include "fpgrp/cancel.hpp"
#include "fpgrp/catalog.hpp"
#include "fpgrp/construct.hpp"
#include "fpgrp/coset.hpp"
#include "fpgrp/errors.hpp"
#include "fpgrp/homology.hpp"
#include "fpgrp/permrep.hpp"
#include "fpgrp/presentation.hpp"
#include "fpgrp/syntax.hpp"
#include "fpgrp/word.hpp"
#include "fpgrp/zlattice.hpp"

#endif  // FPGRP_HPP_

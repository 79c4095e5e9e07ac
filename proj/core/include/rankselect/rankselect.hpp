#pragma once

#include "rankselect/bit_vector.hpp"
#include "rankselect/common.hpp"
#include "rankselect/flat.hpp"
#include "rankselect/oracle.hpp"
#include "rankselect/poppy.hpp"
#include "rankselect/serialize.hpp"
#include "rankselect/wide.hpp"
#include "rankselect/word_select.hpp"

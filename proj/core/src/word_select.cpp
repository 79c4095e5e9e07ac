#include "rankselect/word_select.hpp"

namespace rankselect {

static_assert(popcount_word(0x8000000000000001ULL) == 2);
static_assert(select_in_word_portable(1ULL, 1) == 0);
static_assert(select_in_word_portable(~0ULL, 64) == 63);
static_assert(select_in_word_portable(0x8000000000000000ULL, 1) == 63);
static_assert(select_in_word_portable(0b1011000ULL, 2) == 4);

}  // namespace rankselect

#include "robusta/rational.hpp"

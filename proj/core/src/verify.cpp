#include "wavekin/verify.hpp"

#include "wavekin/runio.hpp"

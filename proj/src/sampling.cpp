#include "cpverify/sampling.hpp"

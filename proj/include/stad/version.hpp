#pragma once

#define STAD_VERSION "0.1.0"

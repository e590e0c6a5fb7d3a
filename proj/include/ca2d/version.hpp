#pragma once

#define CA2D_VERSION "0.1.0"

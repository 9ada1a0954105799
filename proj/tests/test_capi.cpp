#include "voa/voa_c.h"
int main() { return 0; }

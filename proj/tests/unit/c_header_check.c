// Copyright 2026 The gkscp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* Compiles the public header as C and exercises a few calls. */
#include <stdio.h>

#include "gkscp/gkscp.h"

int main(void) {
  gkscp_generator* g = NULL;
  gkscp_verdict v;
  if (gkscp_generator_preset("paper:C1", &g) != GKSCP_OK) {
    fprintf(stderr, "%s\n", gkscp_last_error());
    return 1;
  }
  if (gkscp_kossakowski_cp_test(g, 1e-10, &v) != GKSCP_OK || v.holds != 1) return 1;
  gkscp_generator_free(g);
  printf("gkscp %s\n", gkscp_version());
  return 0;
}

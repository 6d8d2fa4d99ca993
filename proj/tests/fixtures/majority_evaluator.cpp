// Copyright 2026 The Interax Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Evaluator child for the line protocol: the majority game v(S) = 1 iff
// 2|S| >= n.

#include <iostream>
#include <string>

int main() {
  std::ios::sync_with_stdio(false);
  std::string line;
  int n = -1;
  while (std::getline(std::cin, line)) {
    if (line.rfind("INIT ", 0) == 0) {
      n = std::stoi(line.substr(5));
      std::cout << "OK\n" << std::flush;
    } else if (line == "QUIT") {
      return 0;
    } else {
      int members = 0;
      for (char c : line) members += c == '1';
      std::cout << (2 * members >= n ? "1" : "0") << "\n" << std::flush;
    }
  }
  return 0;
}

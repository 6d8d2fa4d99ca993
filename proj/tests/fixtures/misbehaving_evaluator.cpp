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

// Evaluator child that breaks the protocol in a way chosen by argv[1]:
//   bad-init      reply to INIT with something other than OK
//   non-numeric   answer queries with text
//   non-finite    answer queries with "nan"
//   exit-after N  answer N queries with |S|, then exit without a reply
//   count         answer |S| and never fail

#include <cstdlib>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
  const std::string mode = argc > 1 ? argv[1] : "count";
  const int limit = argc > 2 ? std::atoi(argv[2]) : 0;
  std::string line;
  int answered = 0;
  while (std::getline(std::cin, line)) {
    if (line.rfind("INIT ", 0) == 0) {
      std::cout << (mode == "bad-init" ? "HELLO" : "OK") << "\n" << std::flush;
      continue;
    }
    if (line == "QUIT") return 0;
    if (mode == "non-numeric") {
      std::cout << "banana\n" << std::flush;
    } else if (mode == "non-finite") {
      std::cout << "nan\n" << std::flush;
    } else {
      if (mode == "exit-after" && answered >= limit) return 3;
      int members = 0;
      for (char c : line) members += c == '1';
      std::cout << members << "\n" << std::flush;
      ++answered;
    }
  }
  return 0;
}

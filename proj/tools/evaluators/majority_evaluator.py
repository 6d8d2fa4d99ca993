#!/usr/bin/env python3
# Copyright 2026 The Interax Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Sample evaluator for `interax --external`: the majority game.

Usage: interax index --external "python3 majority_evaluator.py" --n 7
"""

import sys


def main():
    n = None
    for line in sys.stdin:
        line = line.strip()
        if line.startswith("INIT "):
            n = int(line[5:])
            print("OK", flush=True)
        elif line == "QUIT":
            return
        else:
            members = line.count("1")
            print(1 if 2 * members >= n else 0, flush=True)


if __name__ == "__main__":
    main()

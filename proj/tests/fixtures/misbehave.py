#!/usr/bin/env python3
# Copyright 2026 The posdom Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

# Misbehaving model: mode "garbage" replies "abc", "die" exits after one
# answer, "slow" never answers, "handshake" refuses the handshake.
import sys
import time

mode = sys.argv[1]
sys.stdin.readline()
if mode == "handshake":
    print("NO", flush=True)
    sys.exit(0)
print("OK", flush=True)
answered = 0
for line in sys.stdin:
    if mode == "garbage":
        print("abc", flush=True)
    elif mode == "die":
        if answered == 1:
            sys.exit(3)
        print("1.0", flush=True)
    elif mode == "slow":
        time.sleep(30)
    answered += 1

# Copyright 2026 The Sepsisflow Authors.
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
"""Node-by-node interpreter for the sepsisflow GBDT JSON format.

Written directly against docs/model_format.md; shares no code with the C++
evaluator. Used to freeze expected outputs for the bundled model.
"""

import json
import math
import sys


def leaf_value(node, x):
    while "leaf" not in node:
        v = x[node["feature"]]
        if v is None:
            go_left = node.get("default_left", True)
        else:
            go_left = v < node["threshold"]
        node = node["left"] if go_left else node["right"]
    return node["leaf"]


def margin(model, x):
    m = model["base_score"]
    for tree in model["trees"]:
        m += leaf_value(tree, x)
    return m


def probability(m):
    return 1.0 / (1.0 + math.exp(-m))


if __name__ == "__main__":
    model = json.load(open(sys.argv[1]))
    for line in sys.stdin:
        x = json.loads(line)
        m = margin(model, x)
        print(json.dumps({"margin": m, "probability": probability(m)}))

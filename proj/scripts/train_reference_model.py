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
"""Trains the bundled reference model and exports it to the JSON format.

The model is a scikit-learn GradientBoostingClassifier (log loss,
learning_rate=0.01, n_estimators=200, max_depth=3) fitted on synthetic
records from physionet_synth. It is a stand-in for a model trained on the
real challenge data: the serving stack only needs a structurally realistic
ensemble with frozen expected outputs.

Usage: python3 scripts/train_reference_model.py [--out tests/fixtures/model]
"""

import argparse
import json
import pathlib

import numpy as np
from sklearn.ensemble import GradientBoostingClassifier

import gbdt_oracle
import physionet_synth as synth

FEATURES = synth.VITALS + synth.LABS + ["Age", "Gender", "HospAdmTime",
                                         "ICULOS", "SIRS", "SOFA"]


def load_config(root):
    return json.loads((root / "config" / "clinical.json").read_text())


def impute(series, fallback):
    idx = [i for i, v in enumerate(series) if v is not None]
    if not idx:
        return [fallback] * len(series)
    out = list(series)
    for i in range(idx[0]):
        out[i] = series[idx[0]]
    for i in range(idx[-1] + 1, len(series)):
        out[i] = series[idx[-1]]
    for a, b in zip(idx, idx[1:]):
        for i in range(a + 1, b):
            t = (i - a) / (b - a)
            out[i] = series[a] + (series[b] - series[a]) * t
    return out


def sirs(row, cfg):
    score = 0
    for criterion in cfg["sirs"]["criteria"]:
        hit = False
        for cond in criterion["any_of"]:
            v = row.get(cond["variable"])
            if v is None:
                continue
            if cond["op"] == ">" and v > cond["value"]:
                hit = True
            if cond["op"] == "<" and v < cond["value"]:
                hit = True
        score += int(hit)
    return score


def sofa(row, cfg):
    total, computed = 0, 0
    for sub in cfg["sofa"]["subscores"]:
        v = row.get(sub["variable"])
        if v is None:
            continue
        if "denominator" in sub:
            d = row.get(sub["denominator"])
            if d is None or d == 0:
                continue
            v = v / d
        computed += 1
        if sub["direction"] == "below":
            total += sum(1 for c in sub["cutoffs"] if v < c)
        else:
            total += sum(1 for c in sub["cutoffs"] if v >= c)
    return total if computed else None


def patient_matrix(rows, cfg):
    fallbacks = cfg["fallback"]
    cols = {}
    for name in synth.VITALS + synth.LABS:
        cols[name] = impute([r[name] for r in rows], fallbacks[name])
    out = []
    for h, r in enumerate(rows):
        row = {name: cols[name][h] for name in cols}
        row.update({k: r[k] for k in ("Age", "Gender", "HospAdmTime", "ICULOS")})
        row["SIRS"] = sirs(row, cfg)
        row["SOFA"] = sofa(row, cfg)
        out.append([row[f] for f in FEATURES])
    return out


def export_tree(tree, learning_rate):
    t = tree.tree_

    def node(i):
        left, right = t.children_left[i], t.children_right[i]
        if left == -1:
            return {"leaf": float(learning_rate * t.value[i][0][0])}
        # scikit-learn routes x <= threshold left; the format uses x < threshold.
        thr = float(np.nextafter(t.threshold[i], np.inf))
        default_left = bool(t.n_node_samples[left] >= t.n_node_samples[right])
        return {"feature": int(t.feature[i]), "threshold": thr,
                "default_left": default_left,
                "left": node(left), "right": node(right)}

    return node(0)


def main():
    root = pathlib.Path(__file__).resolve().parent.parent
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default=str(root / "tests" / "fixtures" / "model"))
    parser.add_argument("--patients", type=int, default=1200)
    args = parser.parse_args()
    cfg = load_config(root)
    rng = np.random.default_rng(7)

    X, y = [], []
    for _ in range(args.patients):
        septic = rng.random() < 0.25
        rows, labels = synth.generate_patient(rng, int(rng.integers(12, 48)), septic)
        X.extend(patient_matrix(rows, cfg))
        y.extend(labels)
    X = np.array([[np.nan if v is None else v for v in r] for r in X])
    X = np.nan_to_num(X, nan=0.0)
    y = np.array(y)

    clf = GradientBoostingClassifier(loss="log_loss", learning_rate=0.01,
                                     n_estimators=200, max_depth=3,
                                     random_state=0)
    clf.fit(X, y)
    base = float(clf._raw_predict_init(X[:1])[0, 0])
    model = {
        "format": "sepsisflow-gbdt",
        "format_version": 1,
        "model_version": "reference-gbdt-1",
        "objective": "binary_logistic",
        "base_score": base,
        "learning_rate": 0.01,
        "n_estimators": 200,
        "max_depth": 3,
        "feature_names": FEATURES,
        "trees": [export_tree(est[0], 0.01) for est in clf.estimators_],
    }

    # Exported model must reproduce scikit-learn up to its float32 input cast.
    sk = clf.decision_function(X[:500])
    ours = np.array([gbdt_oracle.margin(model, list(r)) for r in X[:500]])
    err = float(np.max(np.abs(sk - ours)))
    assert err < 1e-6, err
    print(f"rows={len(y)} positives={int(y.sum())} max|sklearn-export|={err:.2e}")

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "reference_model.json").write_text(json.dumps(model, indent=1) + "\n")

    # Frozen expected outputs: ten vectors, progressively more absent entries.
    vectors = []
    pos, neg = np.flatnonzero(y == 1), np.flatnonzero(y == 0)
    for i in range(10):
        pool = pos if i % 2 == 0 else neg
        x = [float(v) for v in X[pool[rng.integers(len(pool))]]]
        for j in rng.choice(len(FEATURES), size=4 * i, replace=False):
            x[j] = None
        vectors.append(x)
    margins = [gbdt_oracle.margin(model, v) for v in vectors]
    expected = {
        "model": "reference_model.json",
        "vectors": vectors,
        "margins": margins,
        "probabilities": [gbdt_oracle.probability(m) for m in margins],
    }
    (out / "expected_outputs.json").write_text(json.dumps(expected, indent=1) + "\n")


if __name__ == "__main__":
    main()

"""Where the unfairness comes from: subgroup imbalance plus a group shift.

Generates each preset scenario, trains a plain group-blind forest on it, and
prints accuracy next to the signed demographic-parity gap on a balanced test
set. The group column never enters the model; any gap appears only because
the feature distribution differs by group and the training counts are skewed.
"""
import numpy as np

from sgmix import (
    balanced_test_config,
    evaluate,
    gen_conditional_gaussian,
    preset_scenario,
    shift_vectors,
    subgroup_counts,
    train_forest,
)
from sgmix.synth import SCENARIO_NAMES

for name in SCENARIO_NAMES:
    config = preset_scenario(name, seed=0)
    train = gen_conditional_gaussian(config)
    test = gen_conditional_gaussian(balanced_test_config(config.shifts, seed=1))

    b, c = shift_vectors(config.shifts)
    model = train_forest(train.x, train.y)
    result = evaluate(model, test)

    print(f"\n=== {name} ===")
    print(f"training counts by (y, z):\n{subgroup_counts(train)}")
    # cosine between the class shift and the group shift: 0 means the group
    # difference is orthogonal to the label and carries no label information
    cosine = float(b[1] @ c[1])
    print(f"class/group shift alignment: {cosine:+.3f}")
    print(f"accuracy  {result.accuracy:.3f}")
    print(f"dp gap    {result.dp_gap_signed:+.3f}  (mean pred z=0 minus z=1)")
    print(f"fairness  {result.fairness:.3f}")

print(
    "\nOnly the pi/6 scenario aligns the group shift with the class axis, so"
    "\nit is the one where the baseline model picks up a big parity gap."
)

"""
Looking for rational double covers
==================================

Newton iteration proposes g-hat with g-hat^2 - q = r^2 h; rational rounding
followed by an exact genus computation decides.
"""

from collections import Counter

from minitwistor.branch import Outcome, find_admissible_g, is_admissible
from minitwistor.models import ModelParams

for n, lam in ((3, (1, 2)), (4, (1, 2, 3))):
    results = [find_admissible_g(n, lam, seed) for seed in range(32)]
    print(f"n={n} lambdas={lam}:", dict(Counter(r.outcome.value for r in results)))
    for r in results:
        if r.outcome is Outcome.ADMISSIBLE:
            a = is_admissible(ModelParams(n, lam, r.g_hat))
            print(f"  seed {r.seed:2d}: g_hat = {r.g_hat}  {a.to_json()}  generic degree: {a.generic_degree}")

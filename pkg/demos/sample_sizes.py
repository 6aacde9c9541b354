"""How many samples each guarantee costs, and how tight that is.

required_n evaluates the finite-sample sufficiency bound behind each
learner: feed it the accuracy target and the privacy budget, get back the
n at which the guarantee kicks in. lower_bound_n is the packing converse,
the n below which no pure-DP learner can succeed. The gap between the two
is the price of the constants.
"""

from privexp import SampleBound, lower_bound_n, required_n

ALPHA, BETA, EPS = 0.2, 0.1, 1.0
BOUNDS = (0.01, 100.0)


def main() -> None:
    print(f"targets: alpha = {ALPHA}, beta = {BETA}, eps = {EPS}, "
          f"rate window {BOUNDS}\n")

    rows = [
        (SampleBound.SVT_QUANTILE, {}),
        (SampleBound.QUANTILE_SEARCH, {}),
        (SampleBound.CLIPPED_MLE, {"lam": 1.0, "clip_r": 10.0}),
        (SampleBound.MLE_LEARNING, {"lam": 4.0}),
        (SampleBound.QUANTILE_LEARNING, {}),
        (SampleBound.BEST_OF_BOTH, {"lam": 1.0}),
        (SampleBound.BOUNDS_FINDER, {"delta": 1e-6}),
        (SampleBound.LEARN_WITHOUT_BOUNDS, {"lam": 1.0, "delta": 1e-6}),
        # the Pareto tail reduces to an exponential with rate = shape
        (SampleBound.PARETO_LEARNING, {"lam": 2.0}),
    ]
    print(f"{'bound':<22} {'n':>8}  exact?  extra inputs")
    for bound, extra in rows:
        rep = required_n(bound, alpha=ALPHA, beta=BETA, epsilon=EPS,
                         bounds=BOUNDS, **extra)
        tag = "yes" if rep.exact_constants else "no"
        print(f"{bound.value:<22} {rep.n_required:>8}  {tag:<6}  {extra}")

    print("\nsufficiency vs packing converse (adaptive learner, rate 1):")
    print(f"{'ratio':>8} {'upper n':>9} {'lower n':>9} {'gap':>7}")
    for ratio in (1e2, 1e3, 1e4, 1e5, 1e6):
        upper = required_n(SampleBound.BEST_OF_BOTH, alpha=ALPHA, beta=BETA,
                           epsilon=EPS, bounds=(1.0, ratio),
                           lam=1.0).n_required
        lower = lower_bound_n(ALPHA, BETA, EPS, (1.0, ratio))
        print(f"{ratio:8.0e} {upper:>9} {lower:>9} {upper / lower:>6.0f}x")


if __name__ == "__main__":
    main()

"""The three exponential-rate learners, side by side.

The MLE route (quantile scan -> clip -> noisy mean) is sharp when the rate
is large, because the clipping level stays small and so does the noise. The
quantile route (noisy binary search for the fixed 1 - 1/e level) is sharp
when the rate is small. The adaptive learner spends a third of the budget
on a coarse estimate and routes the remaining two thirds to whichever
branch that estimate favors.
"""

from privexp import (ExpModel, LearnerConfig, PrivacyBudget, RateBounds,
                     RngStream, best_of_both, mle_learning,
                     quantile_learning, sample)

CONFIG = LearnerConfig(alpha=0.2, beta=0.1, bounds=RateBounds(0.01, 100.0))


def one_rate(true_rate: float, n: int, seed: int) -> None:
    data = sample(ExpModel(true_rate), n, RngStream(seed))
    print(f"\ntrue rate {true_rate}, n = {n}")
    for name, learner in [("mle", mle_learning),
                          ("quantile", quantile_learning),
                          ("adaptive", best_of_both)]:
        budget = PrivacyBudget(1.0)
        try:
            est = learner(data, CONFIG, budget, RngStream(seed + 1))
        except Exception as exc:  # noqa: BLE001 - demo prints everything
            print(f"  {name:>8}: {type(exc).__name__}: {exc}")
            continue
        rel = est.lambda_hat / true_rate
        route = f" via {est.route.value}" if name == "adaptive" else ""
        coarse = (f", coarse {est.coarse_estimate:.3g}"
                  if est.coarse_estimate is not None else "")
        print(f"  {name:>8}: {est.lambda_hat:8.4f}  (x{rel:.3f} of truth"
              f"{route}{coarse})")
        eps, _ = budget.spent()
        assert eps == 1.0  # every path spends the whole budget


def main() -> None:
    # small rate: quantile route wins, the MLE's clipping level blows up
    one_rate(0.2, 6000, seed=21)
    # middling rate: both work
    one_rate(1.0, 6000, seed=22)
    # large rate: MLE route wins, the quantile grid gets coarse
    one_rate(5.0, 40000, seed=23)


if __name__ == "__main__":
    main()

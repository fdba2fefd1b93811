import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

import numpy as np

from miocp.core import (
    EventBus,
    default_initial_prior,
    meocp_policy,
    mutual_information,
    two_state_experiment_spec,
    propagate_moments,
    rollout,
    solve,
    terminal_regression,
)
from miocp.models import SolveConfig, SolveFinished
from miocp.services.simulation_service import dominant_direction_slope


def quick_start_guide(epsilon: float = 4.0, iterations: int = 300, num_paths: int = 1000):

    print("\n" + "=" * 70)
    print("MIOCP - Quick Start")
    print("=" * 70)

    print("\nStep 1: Building the two-state instance...")
    spec = two_state_experiment_spec(epsilon=epsilon)
    print(f"✓ T={spec.T}, n={spec.n}, m={spec.m}, epsilon={spec.epsilon:g}")

    print("\nStep 2: Alternating between policy and prior...")
    event_bus = EventBus()
    event_bus.subscribe(
        SolveFinished, lambda e: print(
            f"  finished after {e.iterations_run} iterations (converged={e.converged})"))
    trace = solve(spec, default_initial_prior(spec),
                  SolveConfig(max_iters=iterations, trace_every=50), event_bus)
    for i, objective in zip(trace.iterations, trace.objective):
        print(f"  iter {i:4d}: J = {objective.total:.8f}")
    print(f"✓ J = {trace.final_objective.total:.8f}")

    print("\nStep 3: Information carried by the inputs...")
    moments = propagate_moments(spec, trace.final_policy)
    info = [mutual_information(trace.final_policy, moments, k) for k in range(spec.T)]
    print(f"✓ I(x_k; u_k) ranges over [{min(info):.4f}, {max(info):.4f}] nats")

    print("\nStep 4: Comparing with the maximum entropy controller...")
    meocp = meocp_policy(spec)
    gap = max(np.max(np.abs(a - b)) for a, b in zip(meocp.P, trace.final_policy.P))
    print(f"✓ largest feedback gain difference: {gap:.4f}")

    print(f"\nStep 5: Simulating {num_paths} closed-loop paths...")
    batch = rollout(spec, trace.final_policy, num_paths, seed=0)
    slope, intercept = terminal_regression(batch)
    print(f"✓ x_T(2) = {slope:.4f} x_T(1) + {intercept:.4f}")
    print(f"✓ dominant direction of the terminal covariance: "
          f"{dominant_direction_slope(moments.sigma_x[-1]):.4f}")

    print("\n" + "=" * 70)
    print("Done. The same runs are available from the command line:")
    print("  miocp simulate --spec configs/two_state_eps4.json --out out/eps4")
    print("=" * 70)


if __name__ == "__main__":
    quick_start_guide()

#!/usr/bin/env python3
"""Regenerates the trajectory drift-metric fixtures.

An independent NumPy implementation of the segment drift metric (cumulative
ground-truth distance, first end frame reaching each length, pose error
E = delta_est^-1 @ delta_gt via np.linalg.inv, actual-distance normalization,
equal segment weighting) produces expected values for 10 seeded random
est/gt pairs. Run from the repository root:

    python3 tests/oracle/make_traj_fixtures.py

Outputs under tests/data/traj/ are checked in; rerunning must reproduce them.
"""

import pathlib

import numpy as np

OUT_DIR = pathlib.Path(__file__).resolve().parents[1] / "data" / "traj"
LENGTHS = [100.0 * k for k in range(1, 9)]
STEP = 10
CASES = 10
DEG_PER_100M = 180.0 / np.pi * 100.0


def rodrigues(axis: np.ndarray, angle: float) -> np.ndarray:
    axis = axis / np.linalg.norm(axis)
    k = np.array(
        [
            [0.0, -axis[2], axis[1]],
            [axis[2], 0.0, -axis[0]],
            [-axis[1], axis[0], 0.0],
        ]
    )
    return np.eye(3) + np.sin(angle) * k + (1.0 - np.cos(angle)) * (k @ k)


def random_trajectory(rng: np.random.Generator, n: int) -> list[np.ndarray]:
    """Smooth driving-like path: z forward, y down, x right (camera axes)."""
    poses = []
    rot = np.eye(3)
    pos = np.zeros(3)
    yaw_rate = 0.0
    for _ in range(n):
        pose = np.eye(4)
        pose[:3, :3] = rot
        pose[:3, 3] = pos
        poses.append(pose)
        yaw_rate = 0.9 * yaw_rate + rng.normal(0.0, 0.004)
        rot = rot @ rodrigues(np.array([0.0, 1.0, 0.0]), yaw_rate)
        rot = rot @ rodrigues(np.array([1.0, 0.0, 0.0]), rng.normal(0.0, 0.001))
        pos = pos + rot @ np.array([0.0, 0.0, 0.8 + 0.4 * rng.random()])
    return poses


def perturb(rng: np.random.Generator, poses: list[np.ndarray]) -> list[np.ndarray]:
    """Simulated estimator drift: slowly accumulating pose error."""
    est = []
    drift = np.eye(4)
    for pose in poses:
        axis = rng.normal(size=3)
        axis = axis / np.linalg.norm(axis)
        inc = np.eye(4)
        inc[:3, :3] = rodrigues(axis, rng.normal(0.0, 0.002))
        inc[:3, 3] = rng.normal(0.0, 0.02, size=3)
        drift = drift @ inc
        est.append(pose @ drift)
    return est


def drift_errors(est, gt):
    dist = [0.0]
    for i in range(1, len(gt)):
        dist.append(dist[-1] + float(np.linalg.norm(gt[i][:3, 3] - gt[i - 1][:3, 3])))

    per = {}
    for first in range(0, len(gt), STEP):
        for length in LENGTHS:
            last = None
            for j in range(first, len(gt)):
                if dist[j] - dist[first] >= length:
                    last = j
                    break
            if last is None:
                continue
            dist_l = dist[last] - dist[first]
            if dist_l <= 0.0:
                continue
            delta_gt = np.linalg.inv(gt[first]) @ gt[last]
            delta_est = np.linalg.inv(est[first]) @ est[last]
            err = np.linalg.inv(delta_est) @ delta_gt
            t_err = float(np.linalg.norm(err[:3, 3])) / dist_l
            cos_angle = np.clip((np.trace(err[:3, :3]) - 1.0) / 2.0, -1.0, 1.0)
            r_err = float(np.arccos(cos_angle)) / dist_l
            per.setdefault(length, []).append((t_err, r_err))
    return per


def write_poses(path: pathlib.Path, poses) -> None:
    with path.open("w") as out:
        for pose in poses:
            row = pose[:3, :].reshape(-1)
            out.write(" ".join(f"{v:.17g}" for v in row) + "\n")


def main() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    for case in range(CASES):
        rng = np.random.default_rng(20240 + case)
        n = int(rng.integers(400, 800))
        gt = random_trajectory(rng, n)
        est = perturb(rng, gt)
        write_poses(OUT_DIR / f"case_{case:02d}_gt.txt", gt)
        write_poses(OUT_DIR / f"case_{case:02d}_est.txt", est)

        per = drift_errors(est, gt)
        all_t, all_r = [], []
        with (OUT_DIR / f"case_{case:02d}_expected.txt").open("w") as out:
            # rows: length t_err_percent r_err_deg_per_100m segments;
            # final row uses length -1 for the equal-weight averages.
            for length in sorted(per):
                pairs = per[length]
                t_mean = float(np.mean([t for t, _ in pairs])) * 100.0
                r_mean = float(np.mean([r for _, r in pairs])) * DEG_PER_100M
                out.write(f"{length:.0f} {t_mean:.17g} {r_mean:.17g} {len(pairs)}\n")
                all_t.extend(t for t, _ in pairs)
                all_r.extend(r for _, r in pairs)
            avg_t = float(np.mean(all_t)) * 100.0
            avg_r = float(np.mean(all_r)) * DEG_PER_100M
            out.write(f"-1 {avg_t:.17g} {avg_r:.17g} {len(all_t)}\n")
        print(
            f"case {case:02d}: {n} poses, {len(all_t)} segments, "
            f"avg t {avg_t:.4f} %, avg r {avg_r:.4f} deg/100m"
        )


if __name__ == "__main__":
    main()

"""Shot Simulation Workflow - seeded Monte Carlo estimate of the success rate."""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from math import sqrt
from typing import List, Optional

import numpy as np

from ..config import Config
from ..core.codebook import QracInstance
from .analysis import ShotResult, closed_forms, success_table

logger = logging.getLogger(__name__)

# 固定區塊大小：結果與工作者數量無關
BLOCK_SIZE = 65536
WITNESS_SIGMAS = 3.0


def _block_sizes(shots: int) -> List[int]:
    full, rest = divmod(shots, BLOCK_SIZE)
    return [BLOCK_SIZE] * full + ([rest] if rest else [])


def _run_block(
    table: np.ndarray, size: int, seed_seq: np.random.SeedSequence
) -> int:
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    inputs = rng.integers(0, table.shape[0], size=size)
    indices = rng.integers(0, table.shape[1], size=size)
    draws = rng.random(size)
    return int(np.count_nonzero(draws < table[inputs, indices]))


def simulate_shots(
    inst: QracInstance,
    shots: int,
    seed: int,
    noise: float = 0.0,
    workers: Optional[int] = None,
) -> ShotResult:
    """
    以取樣估計平均成功率。

    每一次取樣：均勻抽 x 與 k，以 ⟨ψ_x|M_{x_k|k}|ψ_x⟩（去極化後為
    (1-r)p + r/2）為成功機率抽伯努利。次數切成固定大小的區塊，
    第 i 個區塊使用 SeedSequence(seed).spawn 的第 i 個子序列與 PCG64。

    Args:
        inst: QRAC 實例
        shots: 取樣次數（≥ 1）
        seed: 非負整數種子
        noise: 去極化率，0 ≤ noise < 1
        workers: 執行緒數，預設為 Config.WORKERS

    Returns:
        ShotResult

    Raises:
        ValueError: 當參數不合法時
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    if not 0.0 <= noise < 1.0:
        raise ValueError(f"noise rate must satisfy 0 <= noise < 1, got {noise}")

    table = (1.0 - noise) * success_table(inst) + noise * 0.5
    sizes = _block_sizes(shots)
    children = np.random.SeedSequence(seed).spawn(len(sizes))

    logger.info(f"🎲 執行 {shots} 次取樣（{len(sizes)} 個區塊）...")
    start_time = time.time()
    with ThreadPoolExecutor(max_workers=workers or Config.WORKERS) as pool:
        counts = list(pool.map(lambda job: _run_block(table, *job), zip(sizes, children)))
    elapsed = time.time() - start_time
    logger.info(f"⏱️  取樣耗時: {elapsed:.2f} 秒")

    empirical = sum(counts) / shots
    std_error = sqrt(empirical * (1.0 - empirical) / shots)
    p_classical = closed_forms(inst).p_c
    return ShotResult(
        count=shots,
        seed=seed,
        noise=noise,
        empirical_p=empirical,
        std_error=std_error,
        witness=empirical - p_classical > WITNESS_SIGMAS * std_error,
    )

import logging
import os
import sys
import time

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

# Ensure we can import core modules
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from core.fixtures import FIXTURES
from core.reasoner import materialize, materialized
from core.turtle import parse_turtle, serialize_turtle
from core.validator import validate
from utils.random_graphs import random_graph

logger = logging.getLogger("rss.benchmark")

# CONFIGURATION
RANDOM_SIZES = (2, 4, 8, 16)
RANDOM_SEED = 7
OUTPUT_DIR = "outputs"


def _ms(start):
    return (time.perf_counter() - start) * 1000.0


def time_pipeline(text):
    """Parse, materialize and validate one Turtle document; timings in ms."""
    start = time.perf_counter()
    graph = parse_turtle(text)
    parse_ms = _ms(start)

    start = time.perf_counter()
    delta = materialize(graph)
    infer_ms = _ms(start)

    start = time.perf_counter()
    report = validate(graph.union(delta.added))
    validate_ms = _ms(start)

    return {
        "triples": len(graph),
        "derived": len(delta),
        "rounds": delta.iterations,
        "parse": parse_ms,
        "infer": infer_ms,
        "validate": validate_ms,
        "conforms": report.conforms,
    }


def run_benchmark():
    # 1. Collect scenarios: shipped fixtures, then random graphs of growing size
    scenarios = []
    for name, fixture in sorted(FIXTURES.items()):
        with open(fixture.path, encoding="utf-8") as f:
            scenarios.append((name, f.read()))
    for size in RANDOM_SIZES:
        graph = random_graph(RANDOM_SEED + size, n_series=size, n_members=size)
        scenarios.append((f"random-{size}x{size}", serialize_turtle(graph)))

    results = {"names": [], "parse": [], "infer": [], "validate": [], "triples": [], "success": []}

    print("--- STARTING BENCHMARK SUITE ---\n")
    print(f"{'SCENARIO':<22} | {'STATUS':<10} | {'TRIPLES':<8} | {'DERIVED':<8} | "
          f"{'PARSE (ms)':<10} | {'INFER (ms)':<10} | {'VALID (ms)':<10}")
    print("-" * 95)

    # 2. Run the pipeline on each scenario
    for name, text in scenarios:
        try:
            r = time_pipeline(text)
            status = "CONFORMS" if r["conforms"] else "VIOLATES"
            print(f"{name:<22} | {status:<10} | {r['triples']:<8} | {r['derived']:<8} | "
                  f"{r['parse']:<10.2f} | {r['infer']:<10.2f} | {r['validate']:<10.2f}")
            results["names"].append(name)
            for key in ("parse", "infer", "validate", "triples"):
                results[key].append(r[key])
            results["success"].append(r["conforms"])
        except Exception as e:
            print(f"{name:<22} | ERROR: {e}")
            logger.error("%s failed: %s", name, e, exc_info=logger.isEnabledFor(logging.DEBUG))

    # Second materialization must add nothing
    for name, text in scenarios:
        if name not in results["names"]:
            continue
        graph = materialized(parse_turtle(text))
        assert len(materialize(graph)) == 0, f"{name}: materialization is not idempotent"

    logger.info("Idempotence checked on %d scenarios", len(results["names"]))

    print("\nGenerating Performance Dashboard...", end="")
    generate_dashboard(results)
    print(" Done!")
    print(f"\nAll outputs saved to the '{OUTPUT_DIR}/' folder.")


def generate_dashboard(data):
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(14, 6))
    fig.suptitle("Recurrent Situation Series Benchmark", fontsize=16)

    names = data["names"]
    x = np.arange(len(names))
    width = 0.27

    # PLOT 1: Time per stage
    for offset, stage, color in ((-width, "parse", "#1f77b4"), (0, "infer", "#ff7f0e"),
                                 (width, "validate", "#9467bd")):
        ax1.bar(x + offset, data[stage], width, label=stage.capitalize(), color=color, alpha=0.8)
    ax1.set_title("Time per Stage (ms) - Lower is Better")
    ax1.set_ylabel("Time (ms)")
    ax1.set_xticks(x)
    ax1.set_xticklabels(names)
    ax1.legend()
    ax1.grid(axis="y", linestyle="--", alpha=0.5)
    plt.setp(ax1.xaxis.get_majorticklabels(), rotation=45, ha="right")

    # PLOT 2: Dataset size, colored by conformance
    colors = ["#2ca02c" if s else "#d62728" for s in data["success"]]
    bars = ax2.bar(names, data["triples"], color=colors, alpha=0.8)
    ax2.set_title("Asserted Triples (green = conforms)")
    ax2.set_ylabel("Triples")
    ax2.grid(axis="y", linestyle="--", alpha=0.5)
    plt.setp(ax2.xaxis.get_majorticklabels(), rotation=45, ha="right")
    for bar in bars:
        height = bar.get_height()
        ax2.text(bar.get_x() + bar.get_width() / 2., height, f"{int(height)}", ha="center", va="bottom", fontsize=9)

    plt.tight_layout(rect=[0, 0.03, 1, 0.95])
    os.makedirs(OUTPUT_DIR, exist_ok=True)
    plt.savefig(os.path.join(OUTPUT_DIR, "benchmark_dashboard.png"))
    plt.close(fig)


if __name__ == "__main__":
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    run_benchmark()

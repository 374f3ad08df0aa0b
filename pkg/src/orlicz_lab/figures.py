"""Figure rendering for verification reports.

Each report gets one PNG next to its JSON/CSV output, summarizing the
quantity the experiment certifies: ratio curves, slope fits, or deviation
histograms.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def render(report, outdir: str) -> str | None:
    """Render the figure for one report; returns the file path."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    name = report.name
    try:
        if name == "indicator_norm":
            errs = [t["rel_err"] for t in report.trials]
            labels = [f'{t["phi"]},a={t["a"]:g}' for t in report.trials]
            ax.bar(range(len(errs)), np.maximum(errs, 1e-18))
            ax.set_yscale("log")
            ax.set_xticks(range(len(labels)))
            ax.set_xticklabels(labels, rotation=90, fontsize=6)
            ax.axhline(report.config.get("rtol", 1e-7), color="r", ls="--",
                       label="tolerance")
            ax.set_ylabel("relative error")
            ax.set_title("indicator norm vs closed form")
            ax.legend()
        elif name == "rademacher":
            ratio = [(t["N"], t["R"]) for t in report.trials
                     if t.get("kind") == "ratio"]
            ns, rs = zip(*ratio)
            ax.loglog(ns, rs, ".-", label="R(N)")
            slope = report.summary.get("slope", 0.0)
            ax.loglog(ns, rs[0] * (np.asarray(ns) / ns[0]) ** slope, "--",
                      label=f"slope {slope:.3f}")
            ax.set_xlabel("N")
            ax.set_ylabel("R(N)")
            ax.set_title("divergence ratio")
            ax.legend()
        elif name == "gaussian_limits":
            lam = np.array([t["lam"] for t in report.trials])
            lamf = np.array([t["lamF"] for t in report.trials])
            ax.semilogx(lam, lamf, ".-", label=r"$\lambda F(\lambda)$")
            ax.axhline(report.summary["sqrt_pi_M0"], color="r", ls="--",
                       label=r"$\sqrt{\pi}|M(0)|$")
            ax.set_xlabel(r"$\lambda$")
            ax.set_title("Gaussian-envelope limit")
            ax.legend()
        elif name == "homogeneous":
            t = np.array([r["t"] for r in report.trials])
            lo = np.array([r["product_lower"] for r in report.trials])
            up = np.array([r["product_upper"] for r in report.trials])
            ax.loglog(t, lo, label="lower")
            ax.loglog(t, up, label="upper")
            ax.axhline(1.0, color="k", lw=0.8)
            ax.set_xlabel("t")
            ax.set_ylabel("gauge product")
            ax.set_title("homogeneous-symbol constraint")
            ax.legend()
        elif report.trials and "ratio" in report.trials[0]:
            ratios = [t["ratio"] for t in report.trials]
            ax.hist(ratios, bins=32)
            ax.axvline(1.0, color="r", ls="--", label="bound")
            ax.set_xlabel("lhs/rhs")
            ax.set_ylabel("trials")
            ax.set_title(f"{name}: bound ratios")
            ax.legend()
        elif report.trials:
            devs = [max(v for k, v in t.items()
                        if k.startswith("dev") and isinstance(v, float))
                    for t in report.trials if any(k.startswith("dev")
                                                  for k in t)]
            if not devs:
                plt.close(fig)
                return None
            ax.hist(np.log10(np.maximum(devs, 1e-18)), bins=32)
            ax.set_xlabel("log10 deviation")
            ax.set_ylabel("trials")
            ax.set_title(f"{name}: identity deviations")
        else:
            plt.close(fig)
            return None
        fig.tight_layout()
        path = os.path.join(outdir, f"{name}.png")
        fig.savefig(path, dpi=110)
        return path
    finally:
        plt.close(fig)

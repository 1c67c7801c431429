"""Figure registry: one entry per upstream experiment preset.

Each figure id names the experiment preset whose CSV it renders.  The
entry pins the x column, the series columns with display labels, the
optional grouping column, and the axes cosmetics.  Rendering never
recomputes model values; everything plotted is a CSV column as-is.
"""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class FigureDef:
    x: str
    series: dict[str, str]
    xlabel: str
    ylabel: str
    title: str
    group_by: str | None = None
    logx: bool = False
    logy: bool = False
    errorbars: dict[str, str] = field(default_factory=dict)  # series -> stderr column


_RATIO_SERIES = {
    "ratio_short_to_long": "short/long energy ratio",
    "ratio_upper_bound": "closed-form upper bound",
    "ratio_short_to_long_philip": "closed-form approximation",
}

FIGURES: dict[str, FigureDef] = {
    "fig-sublinear-n4": FigureDef(
        x="sweep_value",
        series=dict(_RATIO_SERIES),
        xlabel="end-to-end failure probability",
        ylabel="energy ratio",
        title="Short-hop vs. long-hop energy, four hops",
        logx=True,
    ),
    "fig-sublinear-n3": FigureDef(
        x="sweep_value",
        series=dict(_RATIO_SERIES),
        xlabel="end-to-end failure probability",
        ylabel="energy ratio",
        title="Short-hop vs. long-hop energy, three hops",
        logx=True,
    ),
    "fig-rate-effect": FigureDef(
        x="sweep_value",
        series={"ratio_short_to_long": "short/long energy ratio"},
        xlabel="end-to-end failure probability",
        ylabel="energy ratio",
        title="Effect of the target rate",
        group_by="family_value",
        logx=True,
    ),
    "fig-loose-qos": FigureDef(
        x="sweep_value",
        series={"ratio_short_to_long": "short/long energy ratio"},
        xlabel="transmit antennas",
        ylabel="energy ratio",
        title="Transmit antennas under loose targets",
        group_by="family_value",
    ),
    "fig-strict-qos": FigureDef(
        x="sweep_value",
        series={"ratio_short_to_long": "short/long energy ratio"},
        xlabel="transmit antennas",
        ylabel="energy ratio",
        title="Transmit antennas under strict targets",
        group_by="family_value",
    ),
    "fig-rx-antennas": FigureDef(
        x="sweep_value",
        series={"ratio_short_to_long": "short/long energy ratio"},
        xlabel="receive antennas",
        ylabel="energy ratio",
        title="Receive antennas",
        group_by="family_value",
    ),
    "fig-mult-short-line": FigureDef(
        x="sweep_value",
        series={"ratio_mult_to_short": "multi-transmit/short energy ratio"},
        xlabel="transmit antennas",
        ylabel="energy ratio",
        title="Multi-transmit long hops vs. short hops",
        group_by="family_value",
    ),
    "fig-mult-short-line2": FigureDef(
        x="sweep_value",
        series={"ratio_mult_to_short": "multi-transmit/short energy ratio"},
        xlabel="transmit antennas",
        ylabel="energy ratio",
        title="Multi-transmit vs. short hops, four receive antennas",
        group_by="family_value",
    ),
    "fig-mult-short-rand": FigureDef(
        x="sweep_value",
        series={"ratio_mult_b_to_a": "multi-transmit/short energy ratio"},
        xlabel="transmit antennas",
        ylabel="energy ratio",
        title="Multi-transmit vs. short hops, sector network",
        group_by="family_value",
    ),
    "fig-energy-ppp": FigureDef(
        x="sweep_value",
        series={
            "energy_a_mean": "short hops (strategy A)",
            "energy_b_mean": "long hops (strategy B)",
        },
        xlabel="hop count",
        ylabel="mean route energy",
        title="Simulated energy in the sector network",
        errorbars={
            "energy_a_mean": "energy_a_stderr",
            "energy_b_mean": "energy_b_stderr",
        },
    ),
}

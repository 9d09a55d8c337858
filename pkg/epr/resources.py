from dataclasses import dataclass

from lab_helpers.resources import (RowResource, bool_field, float_field,
                                   int_field, text_field)
from spin.states import spin_label
from .stats import SIGMA_FACTOR, estimate_correlation


@dataclass
class CountsRow:
    mu_deg: float
    nu_deg: float
    source: str
    up_up: int
    up_down: int
    down_up: int
    down_down: int
    total: int


def counts_rows(stats):
    for setting in stats.settings:
        for source, row in zip(stats.sources, stats.table(setting)):
            yield CountsRow(setting.mu_deg, setting.nu_deg, source,
                            *(int(c) for c in row), int(row.sum()))


class CountsResource(RowResource):
    mu_deg = float_field('mu_deg')
    nu_deg = float_field('nu_deg')
    source = text_field('source')
    up_up = int_field('up_up')
    up_down = int_field('up_down')
    down_up = int_field('down_up')
    down_down = int_field('down_down')
    total = int_field('total')


@dataclass
class EHatRow:
    mu_deg: float
    nu_deg: float
    pairs: int
    e_hat: float
    stderr: float
    anticorrelated_fraction: float
    marginal_up_1: float
    marginal_up_2: float


def e_hat_rows(stats):
    for setting in stats.settings:
        estimate = estimate_correlation(stats, setting)
        up_1, n = stats.marginal_up(setting, 1)
        up_2, _ = stats.marginal_up(setting, 2)
        yield EHatRow(setting.mu_deg, setting.nu_deg, n, estimate.value,
                      estimate.stderr,
                      stats.anticorrelated_fraction(setting), up_1 / n,
                      up_2 / n)


class EHatResource(RowResource):
    mu_deg = float_field('mu_deg')
    nu_deg = float_field('nu_deg')
    pairs = int_field('pairs')
    e_hat = float_field('e_hat')
    stderr = float_field('stderr')
    anticorrelated_fraction = float_field('anticorrelated_fraction')
    marginal_up_1 = float_field('marginal_up_1')
    marginal_up_2 = float_field('marginal_up_2')


@dataclass
class ChshRow:
    mu_deg: float
    mu_p_deg: float
    nu_deg: float
    nu_p_deg: float
    s_hat: float
    stderr: float
    bound: float
    above_bound: bool


class ChshResource(RowResource):
    mu_deg = float_field('mu_deg')
    mu_p_deg = float_field('mu_p_deg')
    nu_deg = float_field('nu_deg')
    nu_p_deg = float_field('nu_p_deg')
    s_hat = float_field('s_hat')
    stderr = float_field('stderr')
    bound = float_field('bound')
    above_bound = bool_field('above_bound')


@dataclass
class ShiftRow:
    wing: int
    first_mu_deg: float
    first_nu_deg: float
    second_mu_deg: float
    second_nu_deg: float
    shift: float
    stderr: float
    passed: bool


def no_signaling_rows(report):
    for wing, first, second, shift, stderr in report.comparisons:
        yield ShiftRow(wing, first.mu_deg, first.nu_deg, second.mu_deg,
                       second.nu_deg, shift, stderr, shift <= SIGMA_FACTOR * stderr)


class ShiftResource(RowResource):
    wing = int_field('wing')
    first_mu_deg = float_field('first_mu_deg')
    first_nu_deg = float_field('first_nu_deg')
    second_mu_deg = float_field('second_mu_deg')
    second_nu_deg = float_field('second_nu_deg')
    shift = float_field('shift')
    stderr = float_field('stderr')
    passed = bool_field('passed')


@dataclass
class FactorizationRow:
    mu_deg: float
    nu_deg: float
    source: str
    gap: float


def factorization_rows(report):
    for (setting, source), gap in sorted(report.gaps.items()):
        yield FactorizationRow(setting.mu_deg, setting.nu_deg, source, gap)


class FactorizationResource(RowResource):
    mu_deg = float_field('mu_deg')
    nu_deg = float_field('nu_deg')
    source = text_field('source')
    gap = float_field('gap')


@dataclass
class SummaryRow:
    check: str
    value: float
    stderr: float
    passed: bool


class SummaryResource(RowResource):
    check = text_field('check')
    value = float_field('value')
    stderr = float_field('stderr')
    passed = bool_field('passed')


@dataclass
class DetectorRecordRow:
    pair: int
    mu_deg: float
    nu_deg: float
    source: str
    out1: str
    out2: str


def detector_rows(result):
    sources = result.stats.sources
    for j in range(result.pairs):
        setting = result.settings[result.setting_index[j]]
        yield DetectorRecordRow(
            j, setting.mu_deg, setting.nu_deg, sources[result.source[j]],
            spin_label(result.out1[j]), spin_label(result.out2[j]))


class DetectorRecordResource(RowResource):
    pair = int_field('pair')
    mu_deg = float_field('mu_deg')
    nu_deg = float_field('nu_deg')
    source = text_field('source')
    out1 = text_field('out1')
    out2 = text_field('out2')


class DisturbanceResource(RowResource):
    magnitude = float_field('magnitude')
    relative_magnitude = float_field('relative_magnitude')
    efficiency = float_field('efficiency')
    efficiency_drop = float_field('efficiency_drop')
    altered_swap_fraction = float_field('altered_swap_fraction')
    swap_decisions = int_field('swap_decisions')
    undone_swaps = int_field('undone_swaps')
    precondition_ok = bool_field('precondition_ok')


@dataclass
class GridCorrelationRow:
    mu_deg: float
    nu_deg: float
    e_hat: float
    stderr: float


def grid_rows(report):
    for i, mu in enumerate(report.angles_deg):
        for j, nu in enumerate(report.angles_deg):
            yield GridCorrelationRow(float(mu), float(nu),
                                     float(report.e_table[i, j]),
                                     float(report.stderr_table[i, j]))


class GridCorrelationResource(RowResource):
    mu_deg = float_field('mu_deg')
    nu_deg = float_field('nu_deg')
    e_hat = float_field('e_hat')
    stderr = float_field('stderr')

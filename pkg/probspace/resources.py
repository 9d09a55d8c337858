from dataclasses import dataclass

from lab_helpers.resources import (RowResource, bool_field, float_field,
                                   int_field)


@dataclass
class ChshScanRow:
    grid_step: float
    grid_points: int
    max_value: float
    p_mu: float
    p_mu_p: float
    p_nu: float
    p_nu_p: float
    bound: float
    passed: bool


class ChshScanResource(RowResource):
    grid_step = float_field('grid_step')
    grid_points = int_field('grid_points')
    max_value = float_field('max_value')
    p_mu = float_field('p_mu')
    p_mu_p = float_field('p_mu_p')
    p_nu = float_field('p_nu')
    p_nu_p = float_field('p_nu_p')
    bound = float_field('bound')
    passed = bool_field('passed')


class LemmaBatteryResource(RowResource):
    models_tested = int_field('models_tested')
    candidates_drawn = int_field('candidates_drawn')
    deterministic_count = int_field('deterministic_count')
    witnesses_found = int_field('witnesses_found')
    ok = bool_field('ok')


@dataclass
class QuantumAuditRow:
    mu_deg: float
    nu_deg: float
    correlation: float
    expected: float
    passive_gap: float


class QuantumAuditResource(RowResource):
    mu_deg = float_field('mu_deg')
    nu_deg = float_field('nu_deg')
    correlation = float_field('correlation')
    expected = float_field('expected')
    passive_gap = float_field('passive_gap')

"""
Exact linear programming over the rationals.

Every number handled here is a :code:`fractions.Fraction`. Problems are
brought into equality form with nonnegative variables and solved with a
two-phase dense tableau simplex using Bland's smallest-index rule, which
terminates without any tolerance. Optimal solutions come with a dual vector
and reduced costs, infeasible ones with a Farkas certificate and unbounded
ones with a ray.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from logging import getLogger
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from infodist import settings
from infodist.errors import BudgetExceeded, StructuralError


logger = getLogger(__name__)


ZERO = Fraction(0)
ONE = Fraction(1)


class Sense(str, Enum):
    MAX = "max"
    MIN = "min"


class Relation(str, Enum):
    LE = "<="
    EQ = "="
    GE = ">="


class Status(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Bound:
    """
    Bounds of a single variable. :code:`None` means unbounded on that side.
    """

    lower: Fraction | None = ZERO  #:
    upper: Fraction | None = None  #:


NONNEGATIVE = Bound()
FREE = Bound(None, None)


@dataclass(frozen=True)
class Constraint:

    coefficients: tuple[Fraction, ...]  #:
    relation: Relation  #:
    rhs: Fraction  #:


@dataclass
class LinearProgram:
    """
    A linear program with dense rows.

    Variables default to the bound :code:`[0, inf)`. Use
    :meth:`add_constraint` to append rows, either from a dense sequence or
    from a sparse mapping of variable index to coefficient.
    """

    sense: Sense  #:
    objective: list[Fraction]  #:
    constraints: list[Constraint] = field(default_factory=list)  #:
    bounds: list[Bound] | None = None  #:

    @property
    def n_variables(self) -> int:
        return len(self.objective)

    def add_constraint(
        self,
        coefficients: Sequence[Fraction] | Mapping[int, Fraction],
        relation: Relation,
        rhs: Fraction | int,
    ):
        """
        Appends a row.

        Args:
            coefficients (Sequence[Fraction] | Mapping[int, Fraction]):
                dense row or sparse mapping :code:`index -> coefficient`
            relation (Relation):
            rhs (Fraction | int):
        """

        if isinstance(coefficients, Mapping):
            row = [ZERO] * self.n_variables
            for index, value in coefficients.items():
                row[index] += Fraction(value)
        else:
            row = [Fraction(value) for value in coefficients]

        self.constraints.append(Constraint(tuple(row), Relation(relation), Fraction(rhs)))

    def variable_bounds(self) -> list[Bound]:
        if self.bounds is None:
            return [NONNEGATIVE] * self.n_variables
        return self.bounds

    def validate(self):
        """
        Raises:
            StructuralError: if the row lengths or the bounds do not match
                the number of variables.
        """

        n = self.n_variables

        if self.bounds is not None and len(self.bounds) != n:
            raise StructuralError(
                f"LinearProgram: {len(self.bounds)} bounds given for {n} variables"
            )

        for index, constraint in enumerate(self.constraints):
            if len(constraint.coefficients) != n:
                raise StructuralError(
                    f"LinearProgram: row {index} has {len(constraint.coefficients)} "
                    f"coefficients, expected {n}"
                )


@dataclass(frozen=True)
class LpOutcome:
    """
    Result of :func:`lp_solve`.

    For an optimal outcome :code:`primal`, :code:`dual` and
    :code:`reduced_costs` are set. The dual has one multiplier per
    constraint. For a maximisation, multipliers of :code:`<=` rows are
    nonnegative and those of :code:`>=` rows nonpositive; for a minimisation
    it is the other way round. Reduced costs are :code:`c - A^T y`.

    An infeasible outcome carries :code:`farkas`, a vector :code:`y` over
    the rows of the problem in its internal standard form proving that no
    feasible point exists. An unbounded outcome carries :code:`ray`, a
    direction in the original variables along which the objective improves
    without limit.
    """

    status: Status  #:
    value: Fraction | None = None  #:
    primal: tuple[Fraction, ...] | None = None  #:
    dual: tuple[Fraction, ...] | None = None  #:
    reduced_costs: tuple[Fraction, ...] | None = None  #:
    farkas: tuple[Fraction, ...] | None = None  #:
    ray: tuple[Fraction, ...] | None = None  #:
    pivots: int = 0  #:


@dataclass
class _ColumnMap:
    """
    How an original variable is written in terms of nonnegative tableau
    columns: :code:`x = offset + sum(sign * y[col])`.
    """

    offset: Fraction
    terms: list[tuple[int, int]]


class _Tableau:
    """
    Dense simplex tableau in equality form :code:`A y = b, y >= 0, b >= 0`.

    The last entry of every row is the right-hand side. Every row owns one
    artificial column, which stays in the tableau so the multipliers can be
    read off its reduced cost, but is never allowed to enter the basis.
    """

    def __init__(self, rows: list[list[Fraction]], n_regular: int):

        self.rows = rows
        self.n_rows = len(rows)
        self.n_regular = n_regular
        self.n_columns = n_regular + self.n_rows
        self.basis = [n_regular + i for i in range(self.n_rows)]
        self.cost_row: list[Fraction] = []
        self.pivots = 0

    def artificial(self, row: int) -> int:
        return self.n_regular + row

    def set_costs(self, costs: list[Fraction]):
        """
        Installs a cost vector over all columns and prices out the current
        basis. The last entry of :code:`cost_row` holds minus the objective.
        """

        cost_row = list(costs) + [ZERO]
        for i, column in enumerate(self.basis):
            factor = costs[column]
            if factor:
                for j, value in enumerate(self.rows[i]):
                    if value:
                        cost_row[j] -= factor * value
        self.cost_row = cost_row

    def objective(self) -> Fraction:
        return -self.cost_row[-1]

    def pivot(self, row: int, column: int):

        pivot_row = self.rows[row]
        element = pivot_row[column]
        if element != ONE:
            pivot_row = [value / element for value in pivot_row]
            self.rows[row] = pivot_row

        support = [(j, value) for j, value in enumerate(pivot_row) if value]

        for i, other in enumerate(self.rows):
            if i == row:
                continue
            factor = other[column]
            if factor:
                for j, value in support:
                    other[j] -= factor * value

        factor = self.cost_row[column]
        if factor:
            for j, value in support:
                self.cost_row[j] -= factor * value

        self.basis[row] = column
        self.pivots += 1

    def entering_column(self) -> int | None:
        for j in range(self.n_regular):
            if self.cost_row[j] < 0:
                return j
        return None

    def leaving_row(self, column: int) -> int | None:

        best_row = None
        best_ratio = None

        for i, row in enumerate(self.rows):
            value = row[column]
            if value <= 0:
                continue
            ratio = row[-1] / value
            if (
                best_ratio is None
                or ratio < best_ratio
                or (ratio == best_ratio and self.basis[i] < self.basis[best_row])
            ):
                best_row = i
                best_ratio = ratio

        return best_row

    def run(self) -> int | None:
        """
        Pivots until optimal.

        Returns:
            int | None: the column proving unboundedness, or :code:`None`
                once the tableau is optimal.
        """

        while True:
            column = self.entering_column()
            if column is None:
                return None
            row = self.leaving_row(column)
            if row is None:
                return column
            self.pivot(row, column)

    def drive_out_artificials(self):
        """
        Replaces artificial columns still basic at level zero after phase one.
        Rows where this is impossible are redundant and keep their artificial.
        """

        for i in range(self.n_rows):
            if self.basis[i] < self.n_regular:
                continue
            row = self.rows[i]
            for j in range(self.n_regular):
                if row[j]:
                    self.pivot(i, j)
                    break

    def multipliers(self, costs: list[Fraction]) -> list[Fraction]:
        """
        Simplex multipliers :code:`c_B B^-1`, one per row.
        """

        return [
            costs[self.artificial(i)] - self.cost_row[self.artificial(i)]
            for i in range(self.n_rows)
        ]

    def basic_values(self) -> list[Fraction]:
        values = [ZERO] * self.n_columns
        for i, column in enumerate(self.basis):
            values[column] = self.rows[i][-1]
        return values


def _standardize(
    lp: LinearProgram,
) -> tuple[list[list[Fraction]], int, list[_ColumnMap], list[int], int]:
    """
    Rewrites :code:`lp` into :code:`A y = b` with :code:`y, b >= 0`.

    Returns:
        rows (with the artificial identity and rhs appended), the number of
        regular columns, the column map of every original variable, the sign
        every row was multiplied with, and the number of structural columns.
    """

    bounds = lp.variable_bounds()
    column_maps: list[_ColumnMap] = []
    n_structural = 0
    upper_rows: list[tuple[int, Fraction]] = []

    for bound in bounds:
        lower = None if bound.lower is None else Fraction(bound.lower)
        upper = None if bound.upper is None else Fraction(bound.upper)

        if lower is not None:
            column_maps.append(_ColumnMap(lower, [(n_structural, 1)]))
            if upper is not None:
                upper_rows.append((n_structural, upper - lower))
            n_structural += 1
        elif upper is not None:
            column_maps.append(_ColumnMap(upper, [(n_structural, -1)]))
            n_structural += 1
        else:
            column_maps.append(
                _ColumnMap(ZERO, [(n_structural, 1), (n_structural + 1, -1)])
            )
            n_structural += 2

    # structural part of every row, relation and shifted rhs
    raw_rows: list[tuple[dict[int, Fraction], Relation, Fraction]] = []

    for constraint in lp.constraints:
        coefficients: dict[int, Fraction] = {}
        rhs = constraint.rhs
        for index, value in enumerate(constraint.coefficients):
            if not value:
                continue
            column_map = column_maps[index]
            rhs -= value * column_map.offset
            for column, sign in column_map.terms:
                coefficients[column] = coefficients.get(column, ZERO) + sign * value
        raw_rows.append((coefficients, constraint.relation, rhs))

    for column, width in upper_rows:
        raw_rows.append(({column: ONE}, Relation.LE, width))

    n_slack = sum(1 for _, relation, _ in raw_rows if relation != Relation.EQ)
    n_regular = n_structural + n_slack
    n_rows = len(raw_rows)
    width = n_regular + n_rows + 1

    if n_rows * width > settings.LP_BUDGET:
        raise BudgetExceeded(
            f"LP with {n_rows} rows and {width} columns exceeds the budget of "
            f"{settings.LP_BUDGET} tableau cells"
        )

    rows: list[list[Fraction]] = []
    signs: list[int] = []
    slack = n_structural

    for i, (coefficients, relation, rhs) in enumerate(raw_rows):
        row = [ZERO] * width
        for column, value in coefficients.items():
            row[column] = value
        if relation == Relation.LE:
            row[slack] = ONE
            slack += 1
        elif relation == Relation.GE:
            row[slack] = -ONE
            slack += 1
        row[-1] = rhs

        sign = 1
        if rhs < 0:
            sign = -1
            row = [-value for value in row]

        row[n_regular + i] = ONE
        rows.append(row)
        signs.append(sign)

    return rows, n_regular, column_maps, signs, n_structural


def _recover(column_maps: list[_ColumnMap], values: list[Fraction]) -> tuple[Fraction, ...]:
    return tuple(
        column_map.offset + sum((sign * values[column] for column, sign in column_map.terms), ZERO)
        for column_map in column_maps
    )


def lp_solve(lp: LinearProgram) -> LpOutcome:
    """
    Solves :code:`lp` exactly.

    Args:
        lp (LinearProgram):

    Raises:
        StructuralError: if the problem is malformed.
        BudgetExceeded: if the tableau would exceed :code:`settings.LP_BUDGET` cells.

    Returns:
        LpOutcome:
    """

    lp.validate()

    objective = [Fraction(value) for value in lp.objective]
    # internally everything is a minimisation
    direction = -1 if lp.sense == Sense.MAX else 1

    rows, n_regular, column_maps, signs, n_structural = _standardize(lp)
    tableau = _Tableau(rows, n_regular)
    n_columns = tableau.n_columns

    logger.debug(
        f"Solving LP: {lp.n_variables} variables, {len(lp.constraints)} constraints, "
        f"tableau {tableau.n_rows}x{n_columns}"
    )

    # phase one
    phase_one_costs = [ZERO] * n_regular + [ONE] * tableau.n_rows
    tableau.set_costs(phase_one_costs)
    tableau.run()

    if tableau.objective() > 0:
        certificate = tableau.multipliers(phase_one_costs)
        farkas = tuple(sign * y for sign, y in zip(signs, certificate))
        logger.debug(f"LP infeasible after {tableau.pivots} pivots")
        return LpOutcome(Status.INFEASIBLE, farkas=farkas, pivots=tableau.pivots)

    tableau.drive_out_artificials()

    # phase two
    phase_two_costs = [ZERO] * n_columns
    for index, column_map in enumerate(column_maps):
        cost = direction * objective[index]
        for column, sign in column_map.terms:
            phase_two_costs[column] += sign * cost
    tableau.set_costs(phase_two_costs)

    unbounded_column = tableau.run()

    if unbounded_column is not None:
        direction_values = [ZERO] * n_columns
        direction_values[unbounded_column] = ONE
        for i, column in enumerate(tableau.basis):
            direction_values[column] = -tableau.rows[i][unbounded_column]
        ray = tuple(
            sum((sign * direction_values[column] for column, sign in column_map.terms), ZERO)
            for column_map in column_maps
        )
        logger.debug(f"LP unbounded after {tableau.pivots} pivots")
        return LpOutcome(Status.UNBOUNDED, ray=ray, pivots=tableau.pivots)

    primal = _recover(column_maps, tableau.basic_values())
    value = sum((c * x for c, x in zip(objective, primal)), ZERO)

    multipliers = tableau.multipliers(phase_two_costs)
    n_user_rows = len(lp.constraints)
    dual = tuple(
        direction * signs[i] * multipliers[i] for i in range(n_user_rows)
    )

    reduced_costs = tuple(
        objective[j]
        - sum(
            (y * constraint.coefficients[j] for y, constraint in zip(dual, lp.constraints)),
            ZERO,
        )
        for j in range(lp.n_variables)
    )

    logger.debug(f"LP optimal with value {value} after {tableau.pivots} pivots")

    return LpOutcome(
        Status.OPTIMAL,
        value=value,
        primal=primal,
        dual=dual,
        reduced_costs=reduced_costs,
        pivots=tableau.pivots,
    )


def dual_objective(lp: LinearProgram, outcome: LpOutcome) -> Fraction:
    """
    Objective of the dual solution carried by an optimal outcome,
    :code:`y.b` plus the contribution of the reduced costs at the variable
    bounds. Equals :code:`outcome.value` whenever the outcome is optimal.
    """

    if outcome.status != Status.OPTIMAL:
        raise StructuralError("dual_objective: outcome is not optimal")

    total = sum((y * c.rhs for y, c in zip(outcome.dual, lp.constraints)), ZERO)
    total += sum((r * x for r, x in zip(outcome.reduced_costs, outcome.primal)), ZERO)
    return total


@dataclass(frozen=True)
class MatrixGameSolution:

    value: Fraction  #:
    row_strategy: tuple[Fraction, ...]  #:
    column_strategy: tuple[Fraction, ...]  #:


def matrix_game_value(matrix: Sequence[Sequence[Fraction]]) -> MatrixGameSolution:
    """
    Value and optimal mixed strategies of the zero-sum matrix game where the
    row player maximises :code:`matrix[i][j]`.

    The row strategy is the primal of
    :code:`max v s.t. v <= sum_i p_i M[i][j] for all j, sum p = 1`; the
    column strategy is read from its dual.

    Args:
        matrix (Sequence[Sequence[Fraction]]):

    Raises:
        StructuralError: if the matrix is empty or ragged.

    Returns:
        MatrixGameSolution:
    """

    n_rows = len(matrix)
    if n_rows == 0 or len(matrix[0]) == 0:
        raise StructuralError("matrix_game_value: matrix must be non-empty")
    n_columns = len(matrix[0])
    if any(len(row) != n_columns for row in matrix):
        raise StructuralError("matrix_game_value: matrix rows have different lengths")

    # variables: p_0 .. p_{m-1}, v
    lp = LinearProgram(
        Sense.MAX,
        [ZERO] * n_rows + [ONE],
        bounds=[NONNEGATIVE] * n_rows + [FREE],
    )

    for j in range(n_columns):
        row = {i: -Fraction(matrix[i][j]) for i in range(n_rows) if matrix[i][j]}
        row[n_rows] = ONE
        lp.add_constraint(row, Relation.LE, 0)

    lp.add_constraint({i: ONE for i in range(n_rows)}, Relation.EQ, 1)

    outcome = lp_solve(lp)
    if outcome.status != Status.OPTIMAL:
        raise StructuralError(f"matrix_game_value: LP ended {outcome.status.value}")

    return MatrixGameSolution(
        value=outcome.value,
        row_strategy=outcome.primal[:n_rows],
        column_strategy=outcome.dual[:n_columns],
    )

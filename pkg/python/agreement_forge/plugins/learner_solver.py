"""Backtracking search over hole-grid cells with forward checking."""

import random
import typing

from ..lang.domain import Value
from ..lang.holes import hole_sort_key
from ..learner.constraint import App, Constraint, evaluate
from ..learner.interpretation import Interpretation
from ..learner.learner import Learner
from ..utils.logger import logger


class SolverLearner(Learner, plugin_name="solver"):
    """
    单元格 = (hole, 参数组合). 只有出现在约束中的单元格参与搜索, 其余取值域首元素.

    - deterministic: 静态单元格顺序, 值按值域顺序, 返回该顺序下字典序最小的解
    - 否则: 最小剩余值 + 冲突活跃度排序, 值顺序由 seed 打乱
    """

    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)
        self._rng = random.Random(self._seed)
        self._activity: typing.Dict[App, float] = {}
        self._index: typing.Dict[App, typing.List[int]] = {}

    def add(self, constraint: Constraint) -> None:
        before = len(self._store)
        super().add(constraint)
        if len(self._store) > before:
            for app in constraint.apps:
                self._index.setdefault(app, []).append(before)

    def _domain(self, app: App) -> typing.List[Value]:
        values = list(self._signatures[app.hole].domain.values)
        if not self._deterministic and self._seed is not None:
            self._rng.shuffle(values)
        return values

    def propose(self) -> Interpretation | None:
        store = self._store
        for c in store:
            if evaluate(c, lambda _: None) is False:
                return None

        cells = sorted(self._index, key=lambda a: (hole_sort_key(a.hole), repr(a.args)))
        domains = {app: self._domain(app) for app in cells}
        assignment: typing.Dict[App, Value] = {}

        def conflict(c: Constraint) -> None:
            for app in c.apps:
                self._activity[app] = self._activity.get(app, 0.0) + 1.0

        def forward_check(app: App, pruned: typing.List) -> bool:
            for i in self._index[app]:
                c = store[i]
                value = evaluate(c, assignment.get)
                if value is False:
                    conflict(c)
                    return False
                if value is True:
                    continue
                open_apps = [a for a in c.apps if a not in assignment]
                if len(open_apps) != 1:
                    continue
                other = open_apps[0]
                keep = []
                for v in domains[other]:
                    assignment[other] = v
                    if evaluate(c, assignment.get) is not False:
                        keep.append(v)
                del assignment[other]
                if len(keep) < len(domains[other]):
                    pruned.append((other, domains[other]))
                    domains[other] = keep
                if not keep:
                    conflict(c)
                    return False
            return True

        def select() -> App | None:
            open_cells = [a for a in cells if a not in assignment]
            if not open_cells:
                return None
            if self._deterministic:
                return open_cells[0]
            return min(open_cells, key=lambda a: (len(domains[a]), -self._activity.get(a, 0.0)))

        nodes = 0

        def search() -> bool:
            nonlocal nodes
            app = select()
            if app is None:
                return True
            for value in list(domains[app]):
                nodes += 1
                if nodes % 4096 == 0:
                    self._check_deadline()
                assignment[app] = value
                pruned: typing.List = []
                if forward_check(app, pruned) and search():
                    return True
                for cell, values in reversed(pruned):
                    domains[cell] = values
                del assignment[app]
            return False

        if not search():
            logger.debug(f"Learner store of {len(store)} constraints is UNSAT ({nodes} nodes)")
            return None

        logger.debug(f"Learner found a model after {nodes} nodes over {len(cells)} cells")
        cells_map = {(app.hole, app.args): value for app, value in assignment.items()}
        if not self._deterministic and self._seed is not None:
            for signature in self._signatures.values():
                for args in signature.grid:
                    cells_map.setdefault((signature.id, args), self._rng.choice(signature.domain.values))
        return Interpretation.from_cells(self.signatures, cells_map)

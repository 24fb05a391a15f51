class BudgetExceeded(RuntimeError):
    """An enumeration or closure grew past its configured element budget."""

    def __init__(self, what, budget, partial=None):
        self.what = what
        self.budget = budget
        self.partial = partial
        msg = f"{what} exceeded budget of {budget}"
        if partial is not None:
            msg += f" (stopped after {partial} elements)"
        super().__init__(msg)


class NotAssociative(ValueError):
    def __init__(self, triple):
        self.triple = triple
        a, b, c = triple
        super().__init__(f"table is not associative: (ab)c != a(bc) for a={a}, b={b}, c={c}")

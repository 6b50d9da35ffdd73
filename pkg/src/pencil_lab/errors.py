"""Error type shared by all pencil_lab modules."""


class PencilLabError(ValueError):
    """A failed precondition or check, tagged with a stable machine-readable code.

    The ``code`` strings (``"nonpositive-a"``, ``"singular-system"``, ...) are part
    of the public surface: the CLI reports them and the tests match on them.
    """

    def __init__(self, code, message=None):
        self.code = code
        super().__init__(f"{code}: {message}" if message else code)

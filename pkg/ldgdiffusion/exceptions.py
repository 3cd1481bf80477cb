"""
Exception hierarchy of the solver. Input validation errors also derive from
ValueError so callers catching ValueError keep working.
"""


class LdgError(Exception):
    pass


class MeshError(LdgError, ValueError):
    pass


class MeshOrientationError(MeshError):
    def __init__(self, message, triangle=None):
        super().__init__(message)
        self.triangle = triangle


class MeshTopologyError(MeshError):
    pass


class MeditParseError(MeshError):
    def __init__(self, message, line_no):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class UnsupportedOrderError(LdgError, ValueError):
    pass


class ShapeMismatchError(LdgError, ValueError):
    pass


class BoundaryConditionError(LdgError, ValueError):
    pass


class ExprError(LdgError, ValueError):
    pass


class ExprSyntaxError(ExprError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class ExprNameError(ExprError):
    def __init__(self, name, offset):
        super().__init__(f"unknown identifier '{name}' at offset {offset}")
        self.name = name
        self.offset = offset


class ExprDomainError(ExprError):
    def __init__(self, message, point):
        t, x1, x2 = point
        super().__init__(f"{message} at t={t!r}, x1={x1!r}, x2={x2!r}")
        self.point = point


class ConfigError(LdgError, ValueError):
    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


class LinearSolverError(LdgError, RuntimeError):
    def __init__(self, message, eta=None, p=None, residual=None):
        super().__init__(f"{message} (eta={eta}, p={p}, residual={residual})")
        self.eta = eta
        self.p = p
        self.residual = residual

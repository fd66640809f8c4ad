"""Exception hierarchy shared by all modules."""


class Heawood3dError(Exception):
    """Base class for every error raised by this package."""


class GluingError(Heawood3dError, ValueError):
    def __init__(self, tet, face, message=None):
        self.tet = tet
        self.face = face
        super().__init__(message or f"{type(self).__name__}: tetrahedron {tet}, face {face}")


class NonInvolutiveGluing(GluingError):
    pass


class OpenFace(GluingError):
    pass


class SelfIdentityGluing(GluingError):
    pass


class NotAManifold(Heawood3dError):
    def __init__(self, witness, report=None):
        self.witness = witness
        self.report = report
        super().__init__(f"not a closed 3-manifold: {witness}")


class DualNotBipartite(Heawood3dError):
    """The dual graph has an odd cycle; ``witness`` lists (tet, face-cell) steps."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"dual graph has an odd cycle of length {len(witness.tets)}")


class NonOrientable(Heawood3dError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"orientation reverses along a dual cycle of length {len(witness.tets)}")


class InconsistentFace(Heawood3dError):
    def __init__(self, face):
        self.face = face
        super().__init__(f"incident tetrahedra induce opposite orientations on face {face}")


class WalkNotClosed(Heawood3dError, ValueError):
    pass


class ArcNotIncident(Heawood3dError, ValueError):
    pass


class CapExceeded(Heawood3dError):
    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"more than {cap} colourings; search stopped before exhausting the space")


class ImproperInput(Heawood3dError, ValueError):
    def __init__(self, edge):
        self.edge = edge
        super().__init__(f"edge {edge} has equally coloured endpoints")


class InternalInconsistency(Heawood3dError, RuntimeError):
    pass


class UnknownName(Heawood3dError, KeyError):
    pass


class MoveNotApplicable(Heawood3dError, ValueError):
    def __init__(self, site, reason):
        self.site = site
        self.reason = reason
        super().__init__(f"move not applicable at {site}: {reason}")


class NotDisjoint(Heawood3dError, ValueError):
    pass


class ResultNotClosed(Heawood3dError, RuntimeError):
    pass


class FormatError(Heawood3dError, ValueError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = f"line {line}" if line is not None else ""
        if col is not None:
            where += f", column {col}"
        Exception.__init__(self, f"{where}: {message}" if where else message)


class GluingSyntaxError(FormatError):
    pass


class BadPermutation(FormatError):
    pass


class InvolutionViolation(FormatError, NonInvolutiveGluing):
    def __init__(self, tet, face, line=None):
        self.tet = tet
        self.face = face
        FormatError.__init__(self, f"gluing of tetrahedron {tet} face {face} is not matched by its target",
                             line=line)


class InvalidComplex(Heawood3dError, ValueError):
    pass

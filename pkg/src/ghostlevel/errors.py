"""Exception types shared across the package."""


class InvalidInput(ValueError):
    """Malformed or mismatched arguments (wrong ring, wrong shape, bad syntax)."""


class InternalError(RuntimeError):
    """An iteration cap or consistency check tripped; indicates a bug, never an answer."""


class UnsupportedGenerator(ValueError):
    """Raised by routines that only handle the rank-one free generator."""


class CertificateFailure(Exception):
    """A ghost-lemma pipeline could not produce a certificate.

    Subclasses name the violated hypothesis so a failing run points at it.
    """

    kind = "Failure"

    def to_json(self):
        return {"failure": self.kind, "message": str(self)}


class NotGhost(CertificateFailure):
    kind = "NotGhost"

    def __init__(self, stage, checks=()):
        self.stage = stage
        self.checks = list(checks)
        super().__init__(f"factor {stage} is not ghost")

    def to_json(self):
        return {
            "failure": self.kind,
            "stage": self.stage,
            "ghost_checks": [[d, v] for d, v in self.checks],
        }


class CompositionZero(CertificateFailure):
    kind = "CompositionZero"

    def __init__(self, msg="composite of ghost factors is null-homotopic"):
        super().__init__(msg)


class PreconditionFailed(CertificateFailure):
    kind = "PreconditionFailed"

class BsatError(ValueError):
    """Raised for every library error; `kind` names the failure, `stage` the pipeline step."""

    def __init__(self, kind, stage, message):
        super().__init__(message)
        self.kind = kind
        self.stage = stage or None

"""Exception hierarchy shared by every module; the CLI maps classes to exit codes."""


class InsepError(Exception):
    exit_code = 1


class ParseError(InsepError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line else ""
        super().__init__(f"{where}{message}")


class UnsupportedFragment(InsepError):
    exit_code = 2


class ShapeError(UnsupportedFragment):
    """Input does not have the definitorial shape an operation requires."""


class InconsistentKB(InsepError):
    exit_code = 2


class ResourceCap(InsepError):
    exit_code = 3

    def __init__(self, message: str, cap: int):
        self.cap = cap
        super().__init__(f"{message} (cap={cap})")

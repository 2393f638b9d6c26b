"""Exception types shared across the toolkit."""


class SinglishError(Exception):
    """Base class for all errors raised by this package."""


# --- rule files ------------------------------------------------------------

class MalformedRuleFile(SinglishError):
    def __init__(self, path, line_no, reason):
        super().__init__(f"{path}:{line_no}: {reason}")
        self.path = path
        self.line_no = line_no
        self.reason = reason


class DuplicateRule(SinglishError):
    def __init__(self, pattern, rule_class):
        super().__init__(f"duplicate rule ({pattern!r}, {rule_class})")
        self.pattern = pattern
        self.rule_class = rule_class


class EmptyRuleSet(SinglishError):
    pass


class CoverageGap(SinglishError):
    """A script element used by the lexicon has no reverse rule producing it."""


class MalformedLexicon(SinglishError):
    def __init__(self, path, line_no, reason):
        super().__init__(f"{path}:{line_no}: {reason}")
        self.path = path
        self.line_no = line_no
        self.reason = reason


# --- transliteration -------------------------------------------------------

class UnmappedGrapheme(SinglishError):
    """A Sinhala grapheme has no forward rule covering it."""

    def __init__(self, grapheme):
        super().__init__(f"no rule maps grapheme {grapheme!r}")
        self.grapheme = grapheme


class UnmappedSequence(SinglishError):
    """No reverse rule matches the input at the given position."""

    def __init__(self, text, position):
        super().__init__(f"no rule matches {text!r} at position {position}")
        self.text = text
        self.position = position


# --- shorthand expansion ---------------------------------------------------

class SkeletonTooLong(SinglishError):
    def __init__(self, word, limit):
        super().__init__(f"{word!r} has more than {limit} characters")
        self.word = word
        self.limit = limit


class NotConsonantOnly(SinglishError):
    pass


class NonAlphabetic(SinglishError):
    pass


# --- corpora and models ----------------------------------------------------

class MisalignedPair(SinglishError):
    def __init__(self, index, detail=""):
        msg = f"corpus pair {index} is misaligned"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.index = index


class EmptyCorpus(SinglishError):
    pass


class InvalidDiscount(SinglishError):
    pass


class ModelFormatError(SinglishError):
    """Model file is not in the expected serialized format."""


class ModelVersionError(ModelFormatError):
    """Model file uses an unsupported format version."""


# --- disambiguation --------------------------------------------------------

class IncompleteAssignment(SinglishError):
    pass


class ExplosionLimitExceeded(SinglishError):
    def __init__(self, size, limit):
        super().__init__(
            f"{size} candidate assignments exceed the limit of {limit}; "
            f"use chunked disambiguation"
        )
        self.size = size
        self.limit = limit


# --- evaluation ------------------------------------------------------------

class EmptyReference(SinglishError):
    pass


class LengthMismatch(SinglishError):
    pass


class DuplicateSlot(SinglishError):
    def __init__(self, slot):
        super().__init__(f"slot {slot} annotated more than once")
        self.slot = slot


class MalformedTestset(SinglishError):
    def __init__(self, path, line_no, reason):
        super().__init__(f"{path}:{line_no}: {reason}")
        self.path = path
        self.line_no = line_no
        self.reason = reason


# --- configuration and serving ---------------------------------------------

class ConfigError(SinglishError):
    pass


class ModelMissing(SinglishError):
    pass


class BindFailure(SinglishError):
    def __init__(self, host, port, reason):
        super().__init__(f"cannot bind {host}:{port}: {reason}")
        self.host = host
        self.port = port

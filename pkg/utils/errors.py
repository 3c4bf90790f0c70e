"""
Hierarquia de exceções do toolkit.

Cada família carrega o código de saída usado pela CLI, de modo que os codecs
apenas levantam exceções e a tradução para exit code acontece em um único ponto.
"""


class StegoError(Exception):
    """Erro base de todas as operações de esteganografia."""
    exit_code: int = 1


# Formato do arquivo (exit 2)

class FormatError(StegoError):
    exit_code = 2


class NotBmp(FormatError):
    pass


class UnsupportedBmp(FormatError):
    pass


class NotWav(FormatError):
    pass


class UnsupportedWav(FormatError):
    pass


class Truncated(FormatError):
    pass


class MetadataCollision(FormatError):
    """O cabeçalho não comporta o marcador e a extensão antes dos pixels."""


# Capacidade (exit 3)

class CapacityError(StegoError):
    exit_code = 3


class CapacityExceeded(CapacityError):
    pass


class TooManyBits(CapacityError):
    pass


class ExtensionTooLong(CapacityError):
    pass


# Metadados de estego ausentes ou corrompidos (exit 4)

class MetadataError(StegoError):
    exit_code = 4


class NotGenuineStego(MetadataError):
    pass


class CorruptMetadata(MetadataError):
    pass


# Parâmetros inválidos (exit 5)

class ParameterError(StegoError):
    exit_code = 5


class BadParams(ParameterError):
    pass


class LengthMismatch(ParameterError):
    pass


class Empty(ParameterError):
    pass

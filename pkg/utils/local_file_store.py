import logging
import os
import tempfile
from pathlib import Path
from typing import Union

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class LocalFileStore:
    """
    Acesso a arquivos locais para a CLI.

    Leituras devolvem o conteúdo inteiro em memória. Escritas são atômicas:
    o conteúdo vai para um arquivo temporário no diretório de destino e só
    então substitui o alvo, de modo que uma falha nunca deixa arquivo parcial.
    """

    base_dir: Path

    def __init__(self, base_dir: PathLike = ".") -> None:
        """
        Args:
            base_dir: Diretório usado para resolver caminhos relativos de saída
        """
        self.base_dir = Path(base_dir)
        if not self.base_dir.is_dir():
            raise FileNotFoundError(f"Diretório não encontrado: {self.base_dir}")

    def resolve_output(self, path: PathLike) -> Path:
        path = Path(path)
        return path if path.is_absolute() else self.base_dir / path

    def read_bytes(self, path: PathLike) -> bytes:
        """Lê o arquivo inteiro."""
        try:
            return Path(path).read_bytes()
        except OSError as e:
            raise RuntimeError(f"Erro ao carregar arquivo {path}: {str(e)}") from e

    def write_bytes(self, path: PathLike, data: bytes) -> Path:
        """
        Grava data em path de forma atômica.

        Returns:
            Caminho final gravado
        """
        target = self.resolve_output(path)
        tmp_name = None
        try:
            fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=target.parent)
            with os.fdopen(fd, "wb") as handle:
                handle.write(data)
            os.replace(tmp_name, target)
        except OSError as e:
            if tmp_name and os.path.exists(tmp_name):
                os.remove(tmp_name)
            raise RuntimeError(f"Erro ao salvar arquivo {target}: {str(e)}") from e

        logger.info(f"Arquivo gravado: {target} ({len(data)} bytes)")
        return target

from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


FMT_CHUNK_ID = b"fmt "
DATA_CHUNK_ID = b"data"
PCM_FORMAT_TAG = 1


class RiffChunk(BaseModel):
    """Chunk RIFF preservado verbatim (id, corpo e byte de alinhamento)"""
    model_config = ConfigDict(frozen=True)

    chunk_id: bytes = Field(..., min_length=4, max_length=4, description="Identificador de 4 bytes")
    body: bytes = Field(..., description="Conteúdo do chunk")
    pad: bytes = Field(default=b"", max_length=1, description="Byte de alinhamento quando o corpo é ímpar")


class WavClip(BaseModel):
    """
    Arquivo WAV PCM 16 bits.

    Os chunks são guardados na ordem original; o corpo do chunk 'data' contém
    as amostras intercaladas. `samples` decodifica esse corpo sob demanda.
    """
    model_config = ConfigDict(frozen=True)

    sample_rate: int = Field(..., gt=0, description="Taxa de amostragem em Hz")
    channels: int = Field(..., gt=0, description="Número de canais")
    bits_per_sample: int = Field(default=16, description="Bits por amostra (sempre 16)")
    riff_size: int = Field(..., ge=0, le=0xFFFFFFFF, description="Tamanho declarado no cabeçalho RIFF")
    chunks: Tuple[RiffChunk, ...] = Field(..., description="Todos os chunks na ordem do arquivo")
    trailing: bytes = Field(default=b"", description="Bytes após o fim do corpo RIFF")

    @model_validator(mode="after")
    def check_invariants(self):
        if self.bits_per_sample != 16:
            raise ValueError(f"bits_per_sample deve ser 16, recebido {self.bits_per_sample}")
        ids = [c.chunk_id for c in self.chunks]
        if ids.count(FMT_CHUNK_ID) != 1 or ids.count(DATA_CHUNK_ID) != 1:
            raise ValueError("WAV deve conter exatamente um chunk 'fmt ' e um chunk 'data'")
        if len(self.data_chunk.body) % (2 * self.channels) != 0:
            raise ValueError("Número de amostras não é múltiplo do número de canais")
        return self

    @property
    def data_chunk(self) -> RiffChunk:
        return next(c for c in self.chunks if c.chunk_id == DATA_CHUNK_ID)

    @property
    def extra_chunks(self) -> Tuple[RiffChunk, ...]:
        return tuple(c for c in self.chunks if c.chunk_id not in (FMT_CHUNK_ID, DATA_CHUNK_ID))

    @property
    def samples(self) -> np.ndarray:
        """Amostras int16 intercaladas (somente leitura)"""
        return np.frombuffer(self.data_chunk.body, dtype="<i2")

    @property
    def samples_per_channel(self) -> int:
        return len(self.data_chunk.body) // (2 * self.channels)

    def channel(self, index: int = 0) -> np.ndarray:
        return self.samples[index::self.channels]

    def with_samples(self, samples: np.ndarray) -> "WavClip":
        """Nova instância com o corpo de 'data' substituído; o tamanho deve ser o mesmo."""
        body = np.asarray(samples, dtype="<i2").tobytes()
        if len(body) != len(self.data_chunk.body):
            raise ValueError("with_samples não pode alterar o número de amostras")
        chunks = tuple(
            c.model_copy(update={"body": body}) if c.chunk_id == DATA_CHUNK_ID else c
            for c in self.chunks
        )
        return self.model_copy(update={"chunks": chunks})

"""
Echo hiding em WAV PCM 16 bits.

Cada bit ocupa um segmento de segment_len amostras do canal 0. No segmento,
s[n] = f[n] + decay * f[n - d], com d = delay_one para bit 1 e delay_zero para
bit 0; f é indexado globalmente, então o eco do início de um segmento vem das
amostras do segmento anterior. A extração compara o cepstrum real do segmento
nos dois atrasos, sem precisar do sinal original.
"""
import logging

import numpy as np

from models import BitSequence, DelayEstimate, EchoParams, WavClip
from utils.errors import BadParams, TooManyBits

logger = logging.getLogger(__name__)

EPS = 1e-10
INT16_MIN, INT16_MAX = -32768, 32767


def _next_pow2(n: int) -> int:
    return 1 << max(n - 1, 0).bit_length()


def real_cepstrum(segment: np.ndarray, eps: float = EPS) -> np.ndarray:
    """
    Cepstrum real: IDFT(log(|DFT(x)|^2 + eps)), com zero-padding até a próxima potência de dois.

    Aceita um segmento (N,) ou vários segmentos empilhados (K, N).
    """
    x = np.asarray(segment, dtype=np.float64)
    n_fft = _next_pow2(x.shape[-1])
    spectrum = np.fft.rfft(x, n=n_fft, axis=-1)
    return np.fft.irfft(np.log(np.abs(spectrum) ** 2 + eps), n=n_fft, axis=-1)


def audio_capacity(clip: WavClip, segment_len: int) -> int:
    """Quantos bits cabem no clip com segmentos de segment_len amostras."""
    if segment_len <= 0:
        raise BadParams(f"segment_len deve ser positivo, recebido {segment_len}")
    return clip.samples_per_channel // segment_len


def _check_fits(clip: WavClip, nbits: int, params: EchoParams) -> None:
    if nbits < 0:
        raise BadParams(f"Número de bits negativo: {nbits}")
    needed = nbits * params.segment_len
    if needed > clip.samples_per_channel:
        raise TooManyBits(
            f"{nbits} bit(s) x {params.segment_len} amostras = {needed}, "
            f"mas o canal tem {clip.samples_per_channel} amostras"
        )


def echo_embed(cover: WavClip, bits: BitSequence, params: EchoParams) -> WavClip:
    """
    Insere um eco por segmento; o atraso do eco codifica o bit.

    Raises:
        TooManyBits: len(bits) * segment_len maior que as amostras por canal
    """
    _check_fits(cover, len(bits), params)
    if not len(bits):
        return cover

    frames = cover.samples.astype(np.int64).reshape(-1, cover.channels)
    source = frames[:, 0].copy()

    span = len(bits) * params.segment_len
    positions = np.arange(span)
    bit_values = np.asarray(bits.bits, dtype=np.int64)
    delays = np.repeat(np.where(bit_values == 1, params.delay_one, params.delay_zero), params.segment_len)
    origins = positions - delays
    delayed = np.where(origins >= 0, source[np.clip(origins, 0, None)], 0)
    echo = np.rint(params.decay * delayed).astype(np.int64)

    frames[:span, 0] = np.clip(source[:span] + echo, INT16_MIN, INT16_MAX)
    logger.debug(f"echo_embed: {len(bits)} bit(s) em {span} amostras, decay={params.decay}")
    return cover.with_samples(frames.reshape(-1))


def echo_extract(stego: WavClip, nbits: int, params: EchoParams) -> BitSequence:
    """
    Recupera nbits comparando o cepstrum de cada segmento em delay_one e delay_zero.

    Raises:
        TooManyBits: nbits * segment_len maior que as amostras por canal
    """
    _check_fits(stego, nbits, params)
    if nbits == 0:
        return BitSequence()

    segments = stego.channel(0)[:nbits * params.segment_len].reshape(nbits, params.segment_len)
    cepstra = real_cepstrum(segments)
    decided = cepstra[:, params.delay_one] > cepstra[:, params.delay_zero]
    return BitSequence(bits=tuple(int(b) for b in decided))


def estimate_echo_delay(
    stego: WavClip,
    segment_index: int,
    max_delay: int,
    params: EchoParams
) -> DelayEstimate:
    """
    Atraso com maior coeficiente cepstral em [1, max_delay] para um segmento.

    Sem um eco real o resultado é arbitrário; peak_strength (z-score do pico
    contra os demais atrasos) permite ao chamador descartar estimativas fracas.

    Raises:
        BadParams: max_delay fora de [1, segment_len/2) ou segmento inexistente
    """
    length = params.segment_len
    if max_delay < 1 or 2 * max_delay >= length:
        raise BadParams(f"max_delay deve estar em [1, {length / 2}), recebido {max_delay}")
    if segment_index < 0 or (segment_index + 1) * length > stego.samples_per_channel:
        raise BadParams(f"Segmento {segment_index} fora do sinal")

    segment = stego.channel(0)[segment_index * length:(segment_index + 1) * length]
    window = real_cepstrum(segment)[1:max_delay + 1]
    best = int(np.argmax(window))
    peak = float(window[best])
    others = np.delete(window, best)
    spread = float(others.std()) if others.size > 1 else 0.0
    strength = (peak - float(others.mean())) / spread if spread > 0 else 0.0

    logger.debug(f"Segmento {segment_index}: atraso {best + 1}, pico {peak:.4f}, z={strength:.2f}")
    return DelayEstimate(segment_index=segment_index, delay=best + 1, peak=peak, peak_strength=strength)

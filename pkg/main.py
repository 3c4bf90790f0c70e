import os
import sys
import logging
from pathlib import Path
from typing import Any, List, Optional

import click
import typer
from dotenv import load_dotenv
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from models import ActionSummary, BitSequence, CliConfig, EchoParams, ValueRange
from utils.bmp_format import parse_bmp, write_bmp
from utils.echo_codec import audio_capacity, echo_embed, echo_extract, estimate_echo_delay
from utils.errors import FormatError, StegoError
from utils.local_file_store import LocalFileStore
from utils.lsb_codec import build_payload, capacity as lsb_capacity, embed as lsb_embed
from utils.lsb_codec import extract as lsb_extract, inspect as lsb_inspect
from utils.metrics import distortion
from utils.wav_format import parse_wav, write_wav

load_dotenv('.env')

# Configuração: variáveis de ambiente (flags explícitas sempre prevalecem)
LOG_LEVEL = getattr(logging, os.getenv("STEGO_LOG_LEVEL", "INFO").upper(), logging.INFO)
OUTPUT_DIR = Path(os.getenv("STEGO_OUTPUT_DIR", "."))
ECHO_SEGMENT = int(os.getenv("STEGO_ECHO_SEGMENT", "1024"))
ECHO_DELAY0 = int(os.getenv("STEGO_ECHO_DELAY0", "50"))
ECHO_DELAY1 = int(os.getenv("STEGO_ECHO_DELAY1", "100"))
ECHO_DECAY = float(os.getenv("STEGO_ECHO_DECAY", "0.5"))

# stdout fica reservado para as linhas de resumo em JSON
logging.basicConfig(
    level=LOG_LEVEL,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    stream=sys.stderr
)
logger = logging.getLogger("stego-bmp-wav")

USAGE_EXIT_CODE = 5
EXTRACT_BASENAME = "org"

app = typer.Typer(
    name="stego",
    help="Esteganografia em BMP 24 bits (LSB 2-3-3) e WAV PCM 16 bits (echo hiding).",
    add_completion=False,
    no_args_is_help=True,
)
err_console = Console(stderr=True)


@app.callback()
def main_callback(
    ctx: typer.Context,
    verbose: int = typer.Option(0, "--verbose", "-v", count=True, help="Cada -v reduz o nível de log em um passo")
) -> None:
    ctx.obj = {"verbosity": verbose}


def _config(ctx: typer.Context, subcommand: str, output_dir: Path = OUTPUT_DIR, **paths: Any) -> CliConfig:
    """
    Valida a configuração efetiva do subcomando e aplica a verbosidade.

    Returns:
        Configuração usada pelo subcomando (diretório de saída, verbosidade)
    """
    config = CliConfig(
        subcommand=subcommand,
        paths={name: str(value) for name, value in paths.items() if value is not None},
        output_dir=output_dir,
        verbosity=(ctx.obj or {}).get("verbosity", 0)
    )
    if config.verbosity:
        logging.getLogger().setLevel(max(logging.DEBUG, LOG_LEVEL - 10 * config.verbosity))
    logger.debug(f"Configuração: {config.model_dump_json()}")
    return config


def _echo_params(delay0: int, delay1: int, decay: float, segment: int) -> EchoParams:
    return EchoParams(delay_zero=delay0, delay_one=delay1, decay=decay, segment_len=segment)


def _summary(action: str, **fields: Any) -> None:
    """Imprime a linha de resumo da ação no stdout."""
    typer.echo(ActionSummary(action=action, **fields).model_dump_json())


def _input(flag: str):
    return typer.Option(..., flag, exists=True, dir_okay=False, readable=True)


# Parâmetros de echo hiding compartilhados pelos subcomandos de áudio
DELAY0_OPTION = typer.Option(ECHO_DELAY0, "--delay0", help="Atraso (amostras) do bit 0")
DELAY1_OPTION = typer.Option(ECHO_DELAY1, "--delay1", help="Atraso (amostras) do bit 1")
DECAY_OPTION = typer.Option(ECHO_DECAY, "--decay", help="Amplitude relativa do eco, em (0, 1)")
SEGMENT_OPTION = typer.Option(ECHO_SEGMENT, "--segment", help="Amostras por bit")


@app.command("embed")
def embed_command(
    ctx: typer.Context,
    cover: Path = _input("--cover"),
    payload: Path = _input("--payload"),
    out: Path = typer.Option(..., "--out"),
    ext: Optional[str] = typer.Option(None, "--ext", help="Extensão gravada (padrão: sufixo do payload)")
) -> None:
    """Esconde um arquivo em um BMP 24 bits."""
    _config(ctx, "embed", cover=cover, payload=payload, out=out)
    store = LocalFileStore()
    image = parse_bmp(store.read_bytes(cover))
    item = build_payload(payload.name, store.read_bytes(payload), ext)

    stego = lsb_embed(image, item)
    target = store.write_bytes(out, write_bmp(stego))
    logger.info(f"{len(item.data)} byte(s) escondidos em {target}")
    _summary(
        "embed",
        output=str(target),
        payload_size=len(item.data),
        extension=item.extension,
        capacity=lsb_capacity(image)
    )


@app.command("extract")
def extract_command(
    ctx: typer.Context,
    stego: Path = _input("--stego"),
    out_dir: Path = typer.Option(OUTPUT_DIR, "--out-dir", file_okay=False, help="Diretório do arquivo extraído")
) -> None:
    """Recupera o arquivo escondido como org.<ext>."""
    config = _config(ctx, "extract", output_dir=out_dir, stego=stego)
    store = LocalFileStore(config.output_dir)
    payload = lsb_extract(parse_bmp(store.read_bytes(stego)))

    name = f"{EXTRACT_BASENAME}.{payload.extension}" if payload.extension else EXTRACT_BASENAME
    target = store.write_bytes(name, payload.data)
    logger.info(f"Payload de {len(payload.data)} byte(s) extraído para {target}")
    _summary("extract", output=str(target), payload_size=len(payload.data), extension=payload.extension)


@app.command("inspect")
def inspect_command(ctx: typer.Context, stego: Path = _input("--stego")) -> None:
    """Mostra os metadados de estego sem extrair nada."""
    _config(ctx, "inspect", stego=stego)
    report = lsb_inspect(parse_bmp(LocalFileStore().read_bytes(stego)))

    table = Table(title=str(stego))
    table.add_column("Campo")
    table.add_column("Valor")
    for field, value in report.model_dump(exclude={"metadata"}).items():
        table.add_row(field, str(value))
    err_console.print(table)
    _summary("inspect", **report.model_dump(exclude={"metadata"}))


@app.command("capacity")
def capacity_command(ctx: typer.Context, cover: Path = _input("--cover")) -> None:
    """Quantos bytes de payload cabem no BMP."""
    _config(ctx, "capacity", cover=cover)
    image = parse_bmp(LocalFileStore().read_bytes(cover))
    _summary("capacity", capacity=lsb_capacity(image), carrier_bytes=len(image.carrier))


@app.command("audio-embed")
def audio_embed_command(
    ctx: typer.Context,
    cover: Path = _input("--cover"),
    bits: Path = _input("--bits"),
    out: Path = typer.Option(..., "--out"),
    delay0: int = DELAY0_OPTION,
    delay1: int = DELAY1_OPTION,
    decay: float = DECAY_OPTION,
    segment: int = SEGMENT_OPTION
) -> None:
    """Esconde os bits de um arquivo (MSB primeiro) em um WAV por echo hiding."""
    _config(ctx, "audio-embed", cover=cover, bits=bits, out=out)
    params = _echo_params(delay0, delay1, decay, segment)
    store = LocalFileStore()
    clip = parse_wav(store.read_bytes(cover))
    sequence = BitSequence.from_bytes(store.read_bytes(bits))

    target = store.write_bytes(out, write_wav(echo_embed(clip, sequence, params)))
    logger.info(f"{len(sequence)} bit(s) embutidos em {target}")
    _summary("audio-embed", output=str(target), nbits=len(sequence), segment_len=params.segment_len)


@app.command("audio-extract")
def audio_extract_command(
    ctx: typer.Context,
    stego: Path = _input("--stego"),
    nbits: int = typer.Option(..., "--nbits", min=0),
    out: Optional[Path] = typer.Option(None, "--out", help="Grava os bits recuperados (MSB primeiro)"),
    delay0: int = DELAY0_OPTION,
    delay1: int = DELAY1_OPTION,
    decay: float = DECAY_OPTION,
    segment: int = SEGMENT_OPTION
) -> None:
    """Recupera nbits de um WAV gerado por audio-embed."""
    _config(ctx, "audio-extract", stego=stego, out=out)
    params = _echo_params(delay0, delay1, decay, segment)
    store = LocalFileStore()
    sequence = echo_extract(parse_wav(store.read_bytes(stego)), nbits, params)

    data = sequence.to_bytes()
    target = store.write_bytes(out, data) if out is not None else None
    _summary(
        "audio-extract",
        output=str(target) if target else None,
        nbits=len(sequence),
        bits_hex=data.hex()
    )


@app.command("audio-capacity")
def audio_capacity_command(
    ctx: typer.Context,
    cover: Path = _input("--cover"),
    segment: int = SEGMENT_OPTION
) -> None:
    """Quantos bits cabem no WAV com o tamanho de segmento dado."""
    _config(ctx, "audio-capacity", cover=cover)
    clip = parse_wav(LocalFileStore().read_bytes(cover))
    _summary("audio-capacity", capacity_bits=audio_capacity(clip, segment), segment_len=segment)


@app.command("audio-delay")
def audio_delay_command(
    ctx: typer.Context,
    stego: Path = _input("--stego"),
    segment_index: int = typer.Option(0, "--segment-index", min=0),
    max_delay: int = typer.Option(..., "--max-delay"),
    delay0: int = DELAY0_OPTION,
    delay1: int = DELAY1_OPTION,
    decay: float = DECAY_OPTION,
    segment: int = SEGMENT_OPTION
) -> None:
    """Estima o atraso de eco dominante em um segmento (diagnóstico)."""
    _config(ctx, "audio-delay", stego=stego)
    params = _echo_params(delay0, delay1, decay, segment)
    clip = parse_wav(LocalFileStore().read_bytes(stego))
    estimate = estimate_echo_delay(clip, segment_index, max_delay, params)
    _summary("audio-delay", **estimate.model_dump())


@app.command("metrics")
def metrics_command(
    ctx: typer.Context,
    a: Path = _input("--a"),
    b: Path = _input("--b")
) -> None:
    """MSE/PSNR entre dois arquivos: amostras se ambos forem WAV, bytes caso contrário."""
    _config(ctx, "metrics", a=a, b=b)
    store = LocalFileStore()
    data_a, data_b = store.read_bytes(a), store.read_bytes(b)
    try:
        clip_a, clip_b = parse_wav(data_a), parse_wav(data_b)
    except FormatError:
        domain = "bytes"
        report = distortion(data_a, data_b, ValueRange.BYTE)
    else:
        domain = "samples"
        report = distortion(clip_a.samples, clip_b.samples, ValueRange.SAMPLE)
    _summary("metrics", domain=domain, **report.model_dump())


def run(argv: Optional[List[str]] = None) -> int:
    """
    Executa a CLI e traduz o resultado em código de saída.

    Returns:
        0 sucesso; 2 formato; 3 capacidade; 4 metadados; 5 uso; 1 erro de E/S
    """
    try:
        result = app(args=argv, prog_name="stego", standalone_mode=False)
    except StegoError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return _failure(argv, e, e.exit_code)
    except click.exceptions.UsageError as e:
        e.show()
        return _failure(argv, e, USAGE_EXIT_CODE)
    except ValidationError as e:
        logger.error(f"Parâmetros inválidos: {e}")
        return _failure(argv, e, USAGE_EXIT_CODE)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.exceptions.Abort as e:
        logger.error("Operação abortada")
        return _failure(argv, e, 1)
    except (RuntimeError, OSError) as e:
        logger.error(str(e))
        return _failure(argv, e, 1)
    return result if isinstance(result, int) else 0


def _failure(argv: Optional[List[str]], error: BaseException, exit_code: int) -> int:
    """Imprime o resumo com status error e devolve o código de saída."""
    action = next((arg for arg in argv or [] if not arg.startswith("-")), "stego")
    _summary(action, status="error", error=type(error).__name__, exit_code=exit_code)
    return exit_code


def run_cli() -> None:
    """Ponto de entrada do script instalado."""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    run_cli()

"""
Testes do codec LSB 2-3-3 com espaçamento entre pixels.
"""
import struct

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from models import PackedChannels, Payload
from tests.conftest import make_bmp
from utils.bmp_format import parse_bmp, write_bmp
from utils.errors import CapacityExceeded, CorruptMetadata, ExtensionTooLong, NotGenuineStego
from utils.lsb_codec import (
    build_payload,
    capacity,
    embed,
    extract,
    group_stride,
    inspect,
    pack_byte,
    pack_groups,
    pixel_spacing,
    unpack_byte,
    unpack_groups,
)

EXTENSION = st.text(alphabet="abcdefghijklmnopqrstuvwxyz0123456789", min_size=0, max_size=3)


def brute_force_capacity(carrier_len: int) -> int:
    groups = carrier_len // 3
    for size in range(groups, 0, -1):
        spacing = carrier_len // (3 * size)
        if spacing >= 1 and size * spacing <= groups - 1:
            return size
    return 0


class TestPackByte:
    """Testes de pack_byte/unpack_byte e das versões vetorizadas"""

    def test_worked_example(self):
        """Testa o exemplo do caractere 'a' (97)."""
        carrier = PackedChannels(r=0b10010011, g=0b11010101, b=0b10110011)
        packed = pack_byte(carrier, 97)

        assert (packed.r, packed.g, packed.b) == (0b10010001, 0b11010100, 0b10110001)
        assert unpack_byte(packed) == 97

    def test_zero_byte_clears_low_bits(self):
        """Testa que o byte 0 zera os bits baixos de cada canal."""
        packed = pack_byte(PackedChannels(r=0xFF, g=0xFF, b=0xFF), 0)
        assert (packed.r, packed.g, packed.b) == (0xFC, 0xF8, 0xF8)

    def test_ff_byte_sets_low_bits(self):
        """Testa que o byte 0xFF liga os bits baixos de cada canal."""
        packed = pack_byte(PackedChannels(r=0, g=0, b=0), 0xFF)
        assert (packed.r, packed.g, packed.b) == (0x03, 0x07, 0x07)

    def test_exhaustive_scalar(self):
        """Testa unpack(pack(c, ch)) == ch para todo byte e 100 carriers aleatórios."""
        rng = np.random.default_rng(1)
        carriers = rng.integers(0, 256, (100, 3))
        for ch in range(256):
            for r, g, b in carriers:
                carrier = PackedChannels(r=int(r), g=int(g), b=int(b))
                packed = pack_byte(carrier, ch)
                assert unpack_byte(packed) == ch
                assert packed.r >> 2 == carrier.r >> 2
                assert packed.g >> 3 == carrier.g >> 3
                assert packed.b >> 3 == carrier.b >> 3

    def test_exhaustive_vectorised(self):
        """Testa o inverso sobre 256 bytes x 1000 carriers com pack_groups."""
        rng = np.random.default_rng(2)
        groups = rng.integers(0, 256, (256 * 1000, 3), dtype=np.uint8)
        data = np.tile(np.arange(256, dtype=np.uint8), 1000)

        packed = pack_groups(groups, data)
        assert np.array_equal(unpack_groups(packed), data)
        assert np.all(np.abs(packed[:, 0].astype(int) - groups[:, 0]) <= 3)
        assert np.all(np.abs(packed[:, 1:].astype(int) - groups[:, 1:]) <= 7)

    def test_scalar_and_vectorised_agree(self):
        """Testa que pack_byte e pack_groups produzem o mesmo grupo."""
        rng = np.random.default_rng(3)
        groups = rng.integers(0, 256, (256, 3), dtype=np.uint8)
        data = np.arange(256, dtype=np.uint8)
        packed = pack_groups(groups, data)

        for i in range(256):
            scalar = pack_byte(PackedChannels(r=int(groups[i, 0]), g=int(groups[i, 1]), b=int(groups[i, 2])), i)
            assert (scalar.r, scalar.g, scalar.b) == tuple(int(v) for v in packed[i])

    def test_pack_is_idempotent(self):
        """Testa pack(pack(c, ch), ch) == pack(c, ch) no escalar e no vetorizado."""
        rng = np.random.default_rng(6)
        for r, g, b in rng.integers(0, 256, (20, 3)):
            carrier = PackedChannels(r=int(r), g=int(g), b=int(b))
            for ch in range(256):
                once = pack_byte(carrier, ch)
                assert pack_byte(once, ch) == once

        groups = rng.integers(0, 256, (256 * 100, 3), dtype=np.uint8)
        data = np.tile(np.arange(256, dtype=np.uint8), 100)
        once = pack_groups(groups, data)
        assert np.array_equal(pack_groups(once, data), once)


class TestPixelSpacingAndCapacity:
    """Testes de pixel_spacing e capacity"""

    def test_pixel_spacing_formula(self):
        """Testa os valores da fórmula floor(carrier / (3 * M))."""
        assert pixel_spacing(30000, 1000) == 10
        assert pixel_spacing(299, 1) == 99

    def test_pixel_spacing_zero_is_capacity_error(self):
        """Testa espaçamento 0."""
        with pytest.raises(CapacityExceeded):
            pixel_spacing(30000, 10001)

    @pytest.mark.parametrize("size", [3, 7, 199, 333, 4999, 9999])
    def test_group_stride_equals_pixel_spacing_off_divisors(self, size):
        """Testa que o passo usado coincide com pixel_spacing quando M não divide G."""
        assert group_stride(30000, size) == pixel_spacing(30000, size)

    @pytest.mark.parametrize("size,expected", [(1, 9999), (2, 4999), (200, 49), (1000, 9), (2500, 3), (5000, 1)])
    def test_group_stride_when_size_divides_groups(self, size, expected):
        """Testa M divisor de G: o último grupo usado continua dentro do carrier."""
        stride = group_stride(30000, size)
        assert stride == expected
        assert size * stride <= 9999

    def test_group_stride_without_room(self):
        """Testa M == G: nenhum passo deixa o último grupo dentro do carrier."""
        with pytest.raises(CapacityExceeded):
            group_stride(30000, 10000)

    def test_capacity_100x100(self, cover_100_bytes):
        """Testa capacidade do carrier de 30000 bytes."""
        assert capacity(parse_bmp(cover_100_bytes)) == 9999

    def test_capacity_tiny_carrier(self):
        """Testa carrier de 5 bytes (um grupo)."""
        image = parse_bmp(make_bmp(1, 1, pixels=b"\x00" * 5))
        assert capacity(image) == 0

    @pytest.mark.parametrize("carrier_len", [3, 6, 9, 299, 300, 301, 3000, 4096, 30000])
    def test_capacity_matches_brute_force(self, carrier_len):
        """Testa capacity contra a busca exaustiva."""
        image = parse_bmp(make_bmp(1, 1, pixels=b"\x00" * carrier_len))
        assert capacity(image) == brute_force_capacity(carrier_len)

    def test_capacity_is_monotone(self):
        """Testa monotonicidade sobre carriers de 300, 3000 e 30000 bytes."""
        values = [capacity(parse_bmp(make_bmp(1, 1, pixels=b"\x00" * n))) for n in (300, 3000, 30000)]
        assert values == sorted(values)


class TestEmbed:
    """Testes de embed"""

    def test_wire_format(self, cover_100_bytes):
        """Testa as posições exatas alteradas para o payload 'abc'/'txt'."""
        cover = parse_bmp(cover_100_bytes)
        stego = write_bmp(embed(cover, Payload(data=b"abc", extension="txt")))

        assert len(stego) == len(cover_100_bytes)
        assert struct.unpack_from("<I", stego, 6)[0] == 3
        assert stego[40:44] == b"1txt"

        allowed = set(range(6, 10)) | set(range(40, 44))
        for group in (3333, 6666, 9999):
            allowed |= {54 + 3 * group + j for j in range(3)}
        diff = {i for i in range(len(stego)) if stego[i] != cover_100_bytes[i]}
        assert diff <= allowed
        assert set(range(40, 44)) <= diff

        carrier = np.frombuffer(stego[54:], dtype=np.uint8).reshape(-1, 3)
        assert bytes(unpack_groups(carrier[[3333, 6666, 9999]])) == b"abc"

    def test_idempotent_low_bits(self, cover_100_bytes):
        """Testa payload igual aos bits baixos já presentes: carrier inalterado."""
        cover = parse_bmp(cover_100_bytes)
        groups = np.frombuffer(cover.carrier, dtype=np.uint8).reshape(-1, 3)
        data = bytes(unpack_groups(groups[[3333, 6666, 9999]]))

        stego = embed(cover, Payload(data=data, extension="bin"))
        assert stego.carrier == cover.carrier
        assert stego.header.raw_header_bytes != cover.header.raw_header_bytes

    def test_capacity_plus_one(self, cover_100_bytes):
        """Testa payload de capacity+1 bytes."""
        cover = parse_bmp(cover_100_bytes)
        with pytest.raises(CapacityExceeded):
            embed(cover, Payload(data=b"x" * (capacity(cover) + 1)))

    def test_full_capacity(self, cover_100_bytes):
        """Testa payload exatamente do tamanho da capacidade."""
        cover = parse_bmp(cover_100_bytes)
        data = bytes(range(256)) * 39 + bytes(15)
        assert len(data) == 9999
        assert extract(embed(cover, Payload(data=data, extension="dat"))).data == data

    def test_extension_too_long(self):
        """Testa extensão com mais de 3 caracteres."""
        with pytest.raises(ExtensionTooLong):
            Payload(data=b"abc", extension="jpeg")

    def test_distortion_bound(self, cover_100_bytes):
        """Testa |stego - cover| <= 3 no primeiro byte do grupo e <= 7 nos demais."""
        cover = parse_bmp(cover_100_bytes)
        rng = np.random.default_rng(5)
        payload = Payload(data=rng.integers(0, 256, 5000, dtype=np.uint8).tobytes())
        stego = embed(cover, payload)

        before = np.frombuffer(cover.carrier, dtype=np.uint8).astype(int).reshape(-1, 3)
        after = np.frombuffer(stego.carrier, dtype=np.uint8).astype(int).reshape(-1, 3)
        assert np.abs(after[:, 0] - before[:, 0]).max() <= 3
        assert np.abs(after[:, 1:] - before[:, 1:]).max() <= 7

    @pytest.mark.parametrize("size", [1, 2, 4, 5, 8, 10, 16, 200, 1000, 2500, 5000, 3, 7, 199, 4999, 10000])
    def test_sizes_dividing_group_count(self, cover_100_bytes, size):
        """Testa tamanhos que dividem G=10000: ida e volta ou CapacityExceeded, nunca outro erro."""
        cover = parse_bmp(cover_100_bytes)
        payload = Payload(data=np.random.default_rng(size).integers(0, 256, size, dtype=np.uint8).tobytes())

        if size > capacity(cover):
            with pytest.raises(CapacityExceeded):
                embed(cover, payload)
        else:
            assert extract(embed(cover, payload)) == payload

    @pytest.mark.parametrize("size", [1, 7, 200, 333, 2500, 4999])
    def test_locality(self, cover_100_bytes, size):
        """Testa que só mudam o campo reserved, o marcador e os bits baixos dos grupos k*passo."""
        cover = parse_bmp(cover_100_bytes)
        data = np.random.default_rng(size).integers(0, 256, size, dtype=np.uint8).tobytes()
        stego = write_bmp(embed(cover, Payload(data=data, extension="bin")))

        stride = group_stride(len(cover.carrier), size)
        used = stride * np.arange(1, size + 1)
        assert used[-1] <= 9999
        allowed = set(range(6, 10)) | set(range(40, 44))
        for group in used.tolist():
            allowed |= {54 + 3 * group + j for j in range(3)}

        before = np.frombuffer(cover_100_bytes, dtype=np.uint8)
        after = np.frombuffer(stego, dtype=np.uint8)
        diff = np.flatnonzero(before != after)
        assert set(diff.tolist()) <= allowed

        keep = np.tile(np.array([0xFC, 0xF8, 0xF8], dtype=np.uint8), len(cover.carrier) // 3)
        assert np.array_equal(after[54:] & keep, before[54:] & keep)


class TestExtract:
    """Testes de extract"""

    def test_round_trip_with_extension(self, cover_100_bytes):
        """Testa extract(embed(c, p)) == p."""
        cover = parse_bmp(cover_100_bytes)
        payload = Payload(data=b"hello world", extension="txt")
        assert extract(embed(cover, payload)) == payload

    def test_round_trip_through_bytes(self, cover_100_bytes):
        """Testa a ida e volta passando pela serialização do arquivo."""
        payload = Payload(data=b"\x00\xff" * 100, extension="")
        stego = write_bmp(embed(parse_bmp(cover_100_bytes), payload))
        assert extract(parse_bmp(stego)) == payload

    def test_pristine_covers_are_rejected(self):
        """Testa NotGenuineStego em 50 coberturas sem marcador."""
        for seed in range(50):
            with pytest.raises(NotGenuineStego):
                extract(parse_bmp(make_bmp(20 + seed, 20, seed=seed)))

    def test_oversized_claim_is_corrupt(self, cover_100_bytes):
        """Testa tamanho declarado igual ao tamanho do carrier."""
        stego = bytearray(write_bmp(embed(parse_bmp(cover_100_bytes), Payload(data=b"abc"))))
        struct.pack_into("<I", stego, 6, 30000)
        with pytest.raises(CorruptMetadata):
            extract(parse_bmp(bytes(stego)))

    def test_zero_size_is_corrupt(self, cover_100_bytes):
        """Testa marcador presente com tamanho 0."""
        data = bytearray(cover_100_bytes)
        data[40] = 0x31
        with pytest.raises(CorruptMetadata):
            extract(parse_bmp(bytes(data)))

    @settings(max_examples=200, deadline=None)
    @given(
        side=st.integers(min_value=100, max_value=512),
        seed=st.integers(min_value=0, max_value=2**32 - 1),
        fraction=st.floats(min_value=0.0, max_value=1.0),
        extension=EXTENSION
    )
    def test_round_trip_generated(self, side, seed, fraction, extension):
        """Testa ida e volta sobre coberturas e payloads aleatórios."""
        cover = parse_bmp(make_bmp(side, side, seed=seed))
        size = max(1, int(fraction * capacity(cover)))
        data = np.random.default_rng(seed).integers(0, 256, size, dtype=np.uint8).tobytes()
        payload = Payload(data=data, extension=extension)

        stego = embed(cover, payload)
        assert len(write_bmp(stego)) == len(write_bmp(cover))
        assert extract(stego) == payload


class TestInspect:
    """Testes de inspect"""

    def test_genuine_stego(self, cover_100_bytes):
        """Testa que o relatório reproduz os metadados do embed."""
        report = inspect(embed(parse_bmp(cover_100_bytes), Payload(data=b"abc", extension="txt")))

        assert report.marker_present
        assert report.plausible
        assert report.claimed_payload_size == 3
        assert report.extension == "txt"
        assert report.pixel_spacing == 3333
        assert report.metadata.payload_size == 3
        assert report.capacity == 9999

    def test_pristine_cover(self, cover_100_bytes):
        """Testa cobertura sem marcador."""
        report = inspect(parse_bmp(cover_100_bytes))
        assert not report.marker_present
        assert not report.plausible
        assert report.detail == "sem marcador"

    def test_implausible_size_is_reported(self, cover_100_bytes):
        """Testa marcador com tamanho acima da capacidade: reportado, nunca levantado."""
        data = bytearray(cover_100_bytes)
        data[40:44] = b"1txt"
        struct.pack_into("<I", data, 6, 0xFFFFFFFF)
        report = inspect(parse_bmp(bytes(data)))

        assert report.marker_present
        assert not report.plausible
        assert report.claimed_payload_size == 0xFFFFFFFF
        assert report.metadata is None

    def test_garbage_extension_is_reported(self, cover_100_bytes):
        """Testa extensão com bytes não ASCII."""
        data = bytearray(cover_100_bytes)
        data[40:44] = b"1\xff\x00z"
        struct.pack_into("<I", data, 6, 3)
        report = inspect(parse_bmp(bytes(data)))

        assert report.marker_present
        assert not report.plausible


class TestBuildPayload:
    """Testes de build_payload"""

    def test_extension_from_last_dot(self):
        """Testa extensão tirada do texto após o último ponto."""
        assert build_payload("dir.d/archive.tar.gz", b"x").extension == "gz"

    def test_no_extension(self):
        """Testa nome sem ponto."""
        assert build_payload("README", b"x").extension == ""

    def test_explicit_extension_wins(self):
        """Testa --ext sobrepondo o sufixo."""
        assert build_payload("photo.jpeg", b"x", extension="jpg").extension == "jpg"

    def test_long_suffix_is_rejected(self):
        """Testa sufixo com mais de 3 caracteres."""
        with pytest.raises(ExtensionTooLong):
            build_payload("photo.jpeg", b"x")

import numpy as np
import pytest

from src.utils.gray_code import bits_to_codeword, codeword_to_bits, gray_decode, gray_encode


@pytest.mark.parametrize("width", [1, 2, 4, 6])
def test_adjacent_indices_differ_in_one_bit(width):
    codes = gray_encode(np.arange(2 ** width))
    flips = [bin(int(a ^ b)).count("1") for a, b in zip(codes[:-1], codes[1:])]
    assert flips == [1] * (2 ** width - 1)


def test_decode_inverts_encode():
    index = np.arange(64)
    np.testing.assert_array_equal(gray_decode(gray_encode(index)), index)


def test_bit_vector_convention_is_msb_first():
    assert int(bits_to_codeword(np.array([-1.0, -1.0]))) == 0
    assert int(bits_to_codeword(np.array([1.0, -1.0]))) == 2
    np.testing.assert_array_equal(codeword_to_bits(3, 2), [1.0, 1.0])
    np.testing.assert_array_equal(codeword_to_bits(np.array([1, 2]), 2), [[-1.0, 1.0], [1.0, -1.0]])

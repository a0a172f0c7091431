"""Tests for src/functions.py"""

import json

import pytest

from functions import canonical_json, content_hash, parse_int_vector, symmetric_residue


class TestCanonicalJson:
    """Tests for the canonical JSON writer."""

    def test_sorted_keys_and_trailing_newline(self):
        text = canonical_json({"b": 1, "a": [1, 2]})
        assert text.endswith("\n")
        assert text.index('"a"') < text.index('"b"')
        assert json.loads(text) == {"a": [1, 2], "b": 1}

    def test_key_order_does_not_matter(self):
        assert canonical_json({"x": 1, "y": 2}) == canonical_json({"y": 2, "x": 1})

    def test_unicode_is_kept(self):
        assert "Δ" in canonical_json({"name": "Δ"})


class TestContentHash:
    def test_prefix_and_length(self):
        digest = content_hash("abc")
        assert digest.startswith("sha256:")
        assert len(digest) == len("sha256:") + 64

    def test_known_value(self):
        assert content_hash("abc") == "sha256:ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"

    def test_str_and_bytes_agree(self):
        assert content_hash("Δ") == content_hash("Δ".encode("utf-8"))


class TestSymmetricResidue:
    @pytest.mark.parametrize("value,p,expected", [(6, 7, -1), (3, 7, 3), (4, 7, -3), (-1, 7, -1), (14, 7, 0), (50, 101, 50)])
    def test_values(self, value, p, expected):
        assert symmetric_residue(value, p) == expected

    def test_range(self):
        for value in range(-30, 30):
            r = symmetric_residue(value, 11)
            assert -5 <= r <= 5
            assert (r - value) % 11 == 0


class TestParseIntVector:
    def test_commas(self):
        assert parse_int_vector("1,0,-1,2") == [1, 0, -1, 2]

    def test_spaces_and_mixed(self):
        assert parse_int_vector(" 3  4,5 ") == [3, 4, 5]

    def test_empty(self):
        with pytest.raises(ValueError):
            parse_int_vector(" , ")

    def test_not_an_integer(self):
        with pytest.raises(ValueError):
            parse_int_vector("1,a")

#!/usr/bin/env python3
"""Regenerates include/trustlens/detail/bundled_lexicon.hpp from data/lexicon.tsv."""
import pathlib

root = pathlib.Path(__file__).resolve().parent.parent
tsv = (root / "data" / "lexicon.tsv").read_text(encoding="utf-8")
chunks = [tsv[i:i + 8000] for i in range(0, len(tsv), 8000)]
body = "\n".join('    R"TLX(' + c + ')TLX"' for c in chunks)
out = f"""#pragma once

// Generated by tools/embed_lexicon.py from data/lexicon.tsv. Do not edit.

#include <string_view>

namespace trustlens::detail {{

inline constexpr std::string_view kBundledLexicon =
{body};

}}  // namespace trustlens::detail
"""
(root / "include" / "trustlens" / "detail" / "bundled_lexicon.hpp").write_text(out, encoding="utf-8")

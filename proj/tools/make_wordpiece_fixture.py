# Copyright 2026 the lexret authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#   http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates the WordPiece conformance fixtures from the reference
implementation (the `tokenizers` library, tested with 0.22):

    pip install tokenizers
    python3 tools/make_wordpiece_fixture.py

Writes tests/fixtures/wordpiece_vocab.txt (a WordPiece vocabulary trained
on the embedded multilingual corpus) and
tests/fixtures/wordpiece_conformance.tsv with one `input<TAB>tokens` row
per test string, tokens space-joined, produced by the reference
normalizer + greedy segmenter (lowercase + accent stripping, unknown
tokens kept as [UNK]).

Test strings deliberately avoid unassigned (Cn) codepoints: the reference
library keeps them while the original category-based rule removes every
C* character, and no real text contains them.
"""
import random
import sys
from pathlib import Path

from tokenizers import Tokenizer
from tokenizers.models import WordPiece
from tokenizers.normalizers import BertNormalizer
from tokenizers.pre_tokenizers import BertPreTokenizer
from tokenizers.trainers import WordPieceTrainer

SENTENCES = [
    # English
    "the quick brown fox jumps over the lazy dog",
    "information retrieval systems rank documents by estimated relevance",
    "tokenization splits text into searchable units called terms",
    "a subword vocabulary is built automatically from unsupervised data",
    "the inverted index maps every term to the documents containing it",
    "questions are often longer than the passages that answer them",
    "Malenga wa zamani hawakuwahi kusahaulika kamwe",
    "evaluation uses reciprocal rank and recall at a fixed cutoff",
    "hybrid scores combine two retrieval runs with a weighted sum",
    # German
    "die schnelle braune Füchsin springt über den faulen Hund",
    "Wörterbücher enthalten zusammengesetzte Substantive wie Donaudampfschifffahrt",
    "Übermäßig lange Wörter werden in kleinere Stücke zerlegt",
    "straße und strasse sollten gleich behandelt werden",
    # French
    "le renard brun saute par-dessus le chien paresseux",
    "les systèmes de recherche classent les documents par pertinence",
    "l'été dernier nous avons visité un château près de la forêt",
    "naïve cœur façade garçon déjà voilà",
    # Spanish
    "el rápido zorro marrón salta sobre el perro perezoso",
    "los motores de búsqueda ordenan los resultados por relevancia",
    "mañana iremos a la montaña con nuestros niños pequeños",
    # Portuguese
    "a rápida raposa marrom pula sobre o cão preguiçoso",
    "a avaliação usa a posição do primeiro documento relevante",
    # Italian
    "la volpe veloce salta sopra il cane pigro",
    "perché più città così è già sarà",
    # Finnish
    "nopea ruskea kettu hyppää laiskan koiran yli",
    "hakukoneet järjestävät asiakirjat arvioidun osuvuuden mukaan",
    "yhdyssanat tekevät suomen kielestä haastavan hakutehtävän",
    # Swedish
    "den snabba bruna räven hoppar över den lata hunden",
    "sökmotorer rangordnar dokument efter relevans",
    # Turkish
    "hızlı kahverengi tilki tembel köpeğin üzerinden atlar",
    "arama motorları belgeleri ilgiye göre sıralar",
    # Indonesian
    "rubah coklat cepat melompati anjing malas",
    "mesin pencari mengurutkan dokumen berdasarkan relevansi",
    # Swahili
    "mbweha mwepesi anaruka juu ya mbwa mvivu",
    "injini za utafutaji hupanga nyaraka kwa umuhimu",
    "habari za asubuhi rafiki yangu wa zamani",
    # Russian
    "быстрая коричневая лиса прыгает через ленивую собаку",
    "поисковые системы ранжируют документы по релевантности",
    "вопросы часто длиннее отрывков которые на них отвечают",
    # Greek
    "η γρήγορη καφέ αλεπού πηδά πάνω από το τεμπέλικο σκυλί",
    "ΣΊΣΥΦΟΣ και ΟΔΥΣΣΕΎΣ ταξίδεψαν μαζί",
    # Hebrew
    "השועל החום המהיר קופץ מעל הכלב העצלן",
    "מנועי חיפוש מדרגים מסמכים לפי רלוונטיות",
    # Arabic
    "الثعلب البني السريع يقفز فوق الكلب الكسول",
    "تقوم محركات البحث بترتيب المستندات حسب الصلة",
    # Hindi
    "तेज़ भूरी लोमड़ी आलसी कुत्ते के ऊपर कूदती है",
    "खोज इंजन दस्तावेज़ों को प्रासंगिकता के अनुसार क्रमित करते हैं",
    # Bengali
    "দ্রুত বাদামী শিয়াল অলস কুকুরের উপর দিয়ে লাফ দেয়",
    "অনুসন্ধান ইঞ্জিন প্রাসঙ্গিকতা অনুসারে নথি সাজায়",
    # Telugu
    "వేగవంతమైన గోధుమ నక్క సోమరి కుక్కపై దూకుతుంది",
    "శోధన యంత్రాలు పత్రాలను ఔచిత్యం ప్రకారం ర్యాంక్ చేస్తాయి",
    # Thai
    "สุนัขจิ้งจอกสีน้ำตาลกระโดดข้ามสุนัขขี้เกียจ",
    "เครื่องมือค้นหาจัดอันดับเอกสารตามความเกี่ยวข้อง",
    # Japanese
    "素早い茶色の狐はのろまな犬を飛び越える",
    "検索エンジンは文書を関連度で並べ替える",
    "これはテストの文章ですから安心してください",
    # Korean
    "빠른 갈색 여우가 게으른 개를 뛰어넘는다",
    "검색 엔진은 문서를 관련성에 따라 정렬한다",
    # Chinese
    "敏捷的棕色狐狸跳过懒惰的狗",
    "搜索引擎根据相关性对文档进行排序",
    "分词是中文信息检索的第一步",
]

EDGE_CASES = [
    "",
    "   ",
    "...",
    "!!!",
    "a",
    "I",
    "Z9",
    "C++ and C# are programming languages!",
    "e-mail: user.name+tag@example.com (really?)",
    "price: $1,234.56 or €987,65 — a 50% discount",
    "WWW.EXAMPLE.COM/path?a=1&b=2#frag",
    "don't can't won't it's o'clock",
    "co-operate re-enter naïveté déjà-vu",
    "CAFÉ Café café CAFE",
    "ÅNGSTRÖM ångström Ångström",
    "Σίσυφος ΣΊΣΥΦΟΣ σίσυφος",
    "İstanbul ISTANBUL ıstanbul istanbul",
    "STRASSE Straße straße STRAẞE",
    "ﬁle ﬂoor ﬀ ligatures",
    "ｆｕｌｌｗｉｄｔｈ　ｔｅｘｔ１２３",
    "half­way soft­hyphen",
    "zero​width‌space‍join",
    "verticaltab formfeed nextline",
    "bidi ‎left ‏right ‪marks‬",
    "nbsp space ogham space ideographic　space",
    "line sep para sep",
    "混合mixedテキストtext텍스트",
    "日本語とEnglishの混在した文",
    "中文词汇test123混合",
    "㐀㛲䶵 extension A ideographs",
    "𠀀𪛖 extension B ideographs",
    "emoji 😀 between 🎉 words",
    "👍🏽 skin tone modifier",
    "math ∑∏∫ symbols ≈≠≤",
    "arrows →←↑↓ and boxes ▣▤",
    "«guillemets» „quotes“ ‚single‘ “curly”",
    "dash–en dash—em hyphen-minus",
    "under_score snake_case_words",
    "MiXeD CaSe WoRdS tOgEtHeR",
    "ALLUPPERCASELONGWORD",
    "a" * 99,
    "b" * 100,
    "c" * 101,
    "ab" * 60,
    "supercalifragilisticexpialidocious",
    "pneumonoultramicroscopicsilicovolcanoconiosis",
    "Honorificabilitudinitatibus floccinaucinihilipilification",
    "12345 67890 3.14159 -42 1e10",
    "٠١٢٣٤٥٦٧٨٩ arabic digits १२३ devanagari",
    "Ⅷ roman numeral ½ fraction ² superscript",
    "ʞɐǝɹq upside down ʇxǝʇ",
    "ǅungla titlecase Ǆ ǅ ǆ",
    "ß ẞ ſ long s",
    "ⅰⅱⅲ small roman ⅠⅡⅢ capital",
]


def build_test_strings():
    rng = random.Random(20260816)
    strings = []
    strings.extend(SENTENCES)
    strings.extend(s.upper() for s in SENTENCES[:40])
    strings.extend(s.title() for s in SENTENCES[40:60])
    strings.extend(EDGE_CASES)
    words = sorted({w for s in SENTENCES for w in s.split()})
    while len(strings) < 1000:
        n = rng.randint(1, 12)
        parts = [rng.choice(words) for _ in range(n)]
        if rng.random() < 0.3:
            parts[rng.randrange(n)] = parts[rng.randrange(n)].upper()
        if rng.random() < 0.3:
            parts.insert(rng.randrange(n + 1), rng.choice(list(".,!?;:()[]\"'")))
        joiner = rng.choice([" ", " ", " ", "  ", ", ", "-", ""])
        strings.append(joiner.join(parts))
    # Tabs and newlines cannot survive the TSV container format.
    return [s.replace("\t", " ").replace("\n", " ").replace("\r", " ")
            for s in strings[:1000]]


def main():
    out_dir = Path(__file__).resolve().parent.parent / "tests" / "fixtures"
    out_dir.mkdir(parents=True, exist_ok=True)

    tokenizer = Tokenizer(WordPiece(unk_token="[UNK]"))
    tokenizer.normalizer = BertNormalizer(clean_text=True, handle_chinese_chars=True,
                                          strip_accents=None, lowercase=True)
    tokenizer.pre_tokenizer = BertPreTokenizer()
    trainer = WordPieceTrainer(vocab_size=8000, min_frequency=1,
                               special_tokens=["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"],
                               continuing_subword_prefix="##")
    tokenizer.train_from_iterator(SENTENCES * 4, trainer)

    vocab = tokenizer.get_vocab()
    entries = [token for token, _ in sorted(vocab.items(), key=lambda kv: kv[1])]
    vocab_path = out_dir / "wordpiece_vocab.txt"
    vocab_path.write_text("\n".join(entries) + "\n", encoding="utf-8")

    strings = build_test_strings()
    rows = []
    for s in strings:
        tokens = tokenizer.encode(s, add_special_tokens=False).tokens
        rows.append(s + "\t" + " ".join(tokens))
    conf_path = out_dir / "wordpiece_conformance.tsv"
    conf_path.write_text("\n".join(rows) + "\n", encoding="utf-8")
    print(f"wrote {vocab_path} ({len(entries)} entries)", file=sys.stderr)
    print(f"wrote {conf_path} ({len(rows)} rows)", file=sys.stderr)


if __name__ == "__main__":
    main()

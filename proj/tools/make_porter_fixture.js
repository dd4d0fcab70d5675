/*
 * Copyright 2026 the lexret authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * Regenerates tests/fixtures/porter.tsv from the reference implementation:
 *
 *   npm install porter-stemmer
 *   node tools/make_porter_fixture.js > tests/fixtures/porter.tsv
 *
 * The word list is fully deterministic: a curated set covering the
 * algorithm's edge cases (including the maintained-variant departures:
 * short words unchanged, bli -> ble, logi -> log), a systematic
 * root x suffix grid, and seeded pseudo-words for odd consonant/vowel
 * shapes. The reference output defines the expected column.
 */
'use strict';

const { stemmer } = require('porter-stemmer');

const curated = [
  // Maintained-variant discriminators.
  'a', 'as', 'is', 'be', 'we', 'do', 'on', 'at', 'it', 'this',
  'possibly', 'probably', 'visibly', 'terribly', 'forcibly',
  'geology', 'theology', 'biology', 'ecology', 'zoology',
  'archaeology', 'anthropology', 'methodology', 'psychology', 'genealogy',
  'analogical', 'geological', 'archaeological',
  // Step 1 families.
  'caresses', 'ponies', 'ties', 'caress', 'cats', 'feed', 'agreed',
  'plastered', 'bled', 'motoring', 'sing', 'conflated', 'troubled',
  'sized', 'hopping', 'tanned', 'falling', 'hissing', 'fizzed',
  'failing', 'filing', 'happy', 'sky', 'dying', 'lying', 'tying',
  'flies', 'dies', 'cries', 'tries', 'dried', 'spied',
  // Step 2.
  'relational', 'conditional', 'rational', 'valency', 'hesitancy',
  'digitizer', 'conformably', 'radically', 'differently', 'vilely',
  'analogously', 'vietnamization', 'predication', 'operator',
  'feudalism', 'decisiveness', 'hopefulness', 'callousness',
  'formality', 'sensitivity', 'sensibility',
  // Step 3.
  'triplicate', 'formative', 'formalize', 'electricity', 'electrical',
  'hopeful', 'goodness',
  // Step 4.
  'revival', 'allowance', 'inference', 'airliner', 'gyroscopic',
  'adjustable', 'defensible', 'irritant', 'replacement', 'adjustment',
  'dependent', 'adoption', 'homologou', 'communism', 'activate',
  'angularity', 'homologous', 'effective', 'bowdlerize',
  // Step 5 and cvc/doublec behavior.
  'probate', 'rate', 'cease', 'controll', 'roll', 'controlling',
  'controlled', 'derivate', 'derive', 'mate', 'skating', 'crepe',
  'hope', 'care', 'file', 'singe', 'singeing', 'canoeing', 'agree',
  'disagree', 'fee', 'siz', 'enthusiasm', 'oscillate', 'oscillating',
];

const roots = [
  'form', 'relat', 'connect', 'activ', 'adjust', 'allow', 'oper',
  'gener', 'nation', 'organ', 'direct', 'predict', 'construct',
  'transmit', 'control', 'commit', 'prefer', 'refer', 'occur',
  'happen', 'develop', 'present', 'content', 'process', 'express',
  'import', 'export', 'transport', 'support', 'report', 'depart',
  'depend', 'defend', 'attend', 'intend', 'respond', 'expand',
  'record', 'reward', 'regard', 'compar', 'declar', 'prepar',
  'requir', 'desir', 'admir', 'inspir', 'deriv', 'arriv', 'believ',
  'receiv', 'achiev', 'resolv', 'involv', 'observ', 'deserv',
  'reserv', 'describ', 'subscrib', 'decid', 'provid', 'divid',
  'includ', 'exclud', 'conclud', 'produc', 'reduc', 'induc',
  'introduc', 'educ', 'locat', 'creat', 'relat', 'situat', 'motiv',
  'captiv', 'festiv', 'massiv', 'passiv', 'natur', 'cultur',
  'structur', 'featur', 'measur', 'pleasur', 'treasur', 'figur',
  'pictur', 'captur', 'fractur', 'lectur', 'ventur', 'textur',
  'mixtur', 'postur', 'gestur', 'mini', 'maxim', 'optim', 'rapid',
  'solid', 'valid', 'vivid', 'timid', 'humid', 'lucid', 'rigid',
  'happi', 'merri', 'sorri', 'carri', 'marri', 'hurri', 'worri',
  'studi', 'read', 'lead', 'tread', 'spread', 'plead', 'knead',
  'bound', 'found', 'ground', 'sound', 'round', 'mound', 'wound',
  'sens', 'dens', 'tens', 'imens', 'condens', 'dispens', 'expens',
  'licens', 'fin', 'min', 'win', 'thin', 'shin', 'grin', 'spin',
  'twin', 'begin', 'sit', 'fit', 'hit', 'bit', 'knit', 'split',
  'admit', 'permit', 'submit', 'emit', 'omit', 'hop', 'top', 'stop',
  'chop', 'crop', 'drop', 'prop', 'shop', 'flop', 'plan', 'scan',
  'span', 'ban', 'fan', 'man', 'tan', 'pan', 'van', 'can', 'run',
  'sun', 'fun', 'gun', 'stun', 'shun', 'spun',
];

const suffixes = [
  '', 's', 'es', 'ies', 'ed', 'ing', 'ings', 'er', 'ers', 'est',
  'ly', 'y', 'ful', 'fulness', 'ness', 'less', 'ment', 'ments',
  'ation', 'ations', 'ational', 'ization', 'izer', 'ize', 'ise',
  'al', 'ally', 'alism', 'aliti', 'ality', 'alize', 'ance', 'ence',
  'ant', 'ent', 'ive', 'iveness', 'ivity', 'ous', 'ously', 'ousness',
  'ible', 'able', 'ibly', 'ably', 'bli', 'eli', 'entli', 'ousli',
  'ical', 'icate', 'iciti', 'icity', 'ion', 'ional', 'ism', 'ist',
  'iti', 'ity', 'ator', 'ielf', 'eed', 'eedly', 'ie', 'ied', 'ies',
];

// Deterministic pseudo-words for shapes the grid misses: rare
// consonant clusters, y in every position, short stems.
function lcg(seed) {
  let state = seed >>> 0;
  return () => {
    state = (state * 1664525 + 1013904223) >>> 0;
    return state / 4294967296;
  };
}

function pseudoWords(count, seed) {
  const rand = lcg(seed);
  const letters = 'abcdefghijklmnopqrstuvwxyz';
  const words = [];
  for (let i = 0; i < count; i++) {
    const len = 1 + Math.floor(rand() * 11);
    let w = '';
    for (let j = 0; j < len; j++) {
      w += letters[Math.floor(rand() * 26)];
    }
    words.push(w);
  }
  return words;
}

const seen = new Set();
const out = [];
function add(word) {
  if (word.length === 0 || seen.has(word)) return;
  seen.add(word);
  out.push(word + '\t' + stemmer(word));
}

curated.forEach(add);
for (const root of roots) {
  for (const suffix of suffixes) {
    add(root + suffix);
  }
}
pseudoWords(2000, 20260816).forEach(add);

process.stdout.write(out.join('\n') + '\n');

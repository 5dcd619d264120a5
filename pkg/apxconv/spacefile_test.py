# Copyright 2024 The apxconv Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

from absl.testing import absltest
from absl.testing import parameterized

from apxconv import cap
from apxconv import quantale
from apxconv import spacefile
from apxconv import test_utils

_HEADER = 'space bad\nmode lukasiewicz 8\npoints p q\n'


class ParseSpaceTest(parameterized.TestCase):

  def test_worked_spaces(self):
    space = spacefile.parse_space_text(test_utils.K3_TEXT)
    self.assertEqual(space, test_utils.k3())
    self.assertEqual(space.name, 'K3')
    self.assertEqual(spacefile.parse_space_text(test_utils.N2_TEXT),
                     test_utils.n2())

  def test_defaults(self):
    space = spacefile.parse_space_text(_HEADER + 'lambda {q} : p=3\n')
    self.assertEqual(space.table[0b01], (0, 8))
    self.assertEqual(space.table[0b10], (3, 0))
    self.assertEqual(space.table[0b11], (3, 8))

  def test_comments_and_blank_lines(self):
    text = '# a comment\n\n' + _HEADER + 'lambda {q} : p=3  # trailing\n'
    self.assertEqual(spacefile.parse_space_text(text).a(0b10, 0), 3)

  @parameterized.named_parameters(
      ('value_outside_chain', 'lambda {q} : p=9\n', 4),
      ('unknown_point', 'lambda {s} : p=1\n', 4),
      ('empty_base', 'lambda {} : p=1\n', 4),
      ('missing_colon', 'lambda {q} p=1\n', 4),
      ('duplicate_row', 'lambda {q} : p=1\nlambda {q} : p=2\n', 5),
      ('unknown_keyword', 'lamda {q} : p=1\n', 4),
      ('uncentered', 'lambda {p} : p=3\n', 4),
      ('not_monotone', 'lambda {p,q} : p=0 q=0\n', 4),
  )
  def test_errors_carry_line_numbers(self, body, line):
    with self.assertRaises(spacefile.SpaceFormatError) as cm:
      spacefile.parse_space_text(_HEADER + body, source='bad.space')
    self.assertEqual(cm.exception.line, line)
    self.assertStartsWith(str(cm.exception), f'bad.space:{line}: ')

  def test_missing_header(self):
    with self.assertRaises(spacefile.SpaceFormatError) as cm:
      spacefile.parse_space_text('points p q\n')
    self.assertIsNone(cm.exception.line)

  def test_invalid_spaces_without_validation(self):
    space = spacefile.parse_space_text(_HEADER + 'lambda {p} : p=3\n',
                                       validate=False)
    self.assertFalse(cap.validate(space).ok)

  def test_parse_space_from_file(self):
    with test_utils.written(test_utils.K3_TEXT, 'k3.space') as path:
      self.assertEqual(spacefile.parse_space(path), test_utils.k3())


class FormatSpaceTest(absltest.TestCase):

  def test_default_rows_are_left_out(self):
    self.assertEqual(
        spacefile.format_space(test_utils.k3()),
        'space K3\nmode lukasiewicz 8\npoints p q r\n'
        'lambda {q} : p=2\nlambda {r} : q=2\n')

  def test_round_trip(self):
    for space in (test_utils.k3(), test_utils.n2(), test_utils.mline(),
                  cap.ap_reflection(test_utils.k3())):
      text = spacefile.format_space(space)
      self.assertEqual(spacefile.parse_space_text(text), space, text)

  def test_explicit_bottom_row(self):
    text = spacefile.format_space(test_utils.n2())
    self.assertIn('lambda {p,q} :\n', text)


class FunctionAndMapTest(absltest.TestCase):

  def test_function(self):
    c, q = test_utils.carrier(), quantale.lukasiewicz(8)
    f = spacefile.parse_function_text('p=2\nr=inf\n', c, q)
    self.assertEqual(f.values, (2, 8, 8))
    with self.assertRaises(spacefile.SpaceFormatError) as cm:
      spacefile.parse_function_text('p=2\np=3\n', c, q)
    self.assertEqual(cm.exception.line, 2)

  def test_point_map(self):
    x, y = test_utils.carrier(), test_utils.carrier('a', 'b')
    f = spacefile.parse_point_map_text('p -> a\nq -> b\nr -> a\n', x, y)
    self.assertEqual(f.images, (0, 1, 0))
    with self.assertRaises(spacefile.SpaceFormatError) as cm:
      spacefile.parse_point_map_text('p -> a\nq b\n', x, y)
    self.assertEqual(cm.exception.line, 2)
    with self.assertRaisesRegex(spacefile.SpaceFormatError, 'not total'):
      spacefile.parse_point_map_text('p -> a\n', x, y)

  def test_files(self):
    c, q = test_utils.carrier(), quantale.UNIT
    with test_utils.written('q=1/2\n') as path:
      self.assertEqual(spacefile.parse_function(path, c, q).values,
                       (0, quantale.UNIT.parse_value('1/2'), 0))
    with test_utils.written('p -> p\nq -> p\nr -> r\n') as path:
      self.assertEqual(spacefile.parse_point_map(path, c, c).images,
                       (0, 0, 2))


if __name__ == '__main__':
  absltest.main()

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

import fractions
import itertools

from absl.testing import absltest
from absl.testing import parameterized

from apxconv import quantale

F = fractions.Fraction


class QuantaleTest(parameterized.TestCase):

  def test_lukasiewicz_order_is_reversed(self):
    q = quantale.lukasiewicz(8)
    self.assertEqual(q.top, 0)
    self.assertEqual(q.bottom, 8)
    self.assertTrue(q.leq(8, 2))
    self.assertFalse(q.leq(2, 8))
    self.assertTrue(q.lt(3, 2))
    self.assertEqual(q.elements(), tuple(range(8, -1, -1)))

  def test_lukasiewicz_arithmetic(self):
    q = quantale.lukasiewicz(8)
    self.assertEqual(q.tensor(2, 2), 4)
    self.assertEqual(q.tensor(5, 6), 8)
    self.assertEqual(q.residuate(3, 1), 2)
    self.assertEqual(q.residuate(1, 3), 0)
    self.assertEqual(q.join([3, 1, 5]), 1)
    self.assertEqual(q.meet([3, 1, 5]), 5)

  def test_unit_arithmetic(self):
    q = quantale.UNIT
    self.assertEqual(q.tensor(F(1, 2), F(1, 4)), F(1, 8))
    self.assertEqual(q.residuate(F(1, 8), F(1, 2)), F(1, 4))
    self.assertEqual(q.residuate(F(1, 2), F(1, 4)), 1)
    self.assertEqual(q.residuate(F(1, 3), 0), 1)

  @parameterized.named_parameters(
      ('lukasiewicz', quantale.lukasiewicz(3)),
      ('unit', quantale.UNIT),
  )
  def test_empty_join_and_meet(self, q):
    self.assertEqual(q.join([]), q.bottom)
    self.assertEqual(q.meet([]), q.top)

  @parameterized.named_parameters(
      ('lukasiewicz', quantale.lukasiewicz(4),
       (0, 1, 2, 3, 4)),
      ('unit', quantale.UNIT,
       (F(0), F(1, 4), F(1, 3), F(1, 2), F(1))),
  )
  def test_residuation_adjunction(self, q, values):
    for v, x, y in itertools.product(values, repeat=3):
      self.assertEqual(q.leq(q.tensor(v, x), y), q.leq(x, q.residuate(y, v)),
                       (v, x, y))

  def test_coerce(self):
    q = quantale.lukasiewicz(2)
    self.assertEqual(q.coerce(F(2)), 2)
    self.assertIsInstance(quantale.UNIT.coerce(1), F)
    with self.assertRaises(ValueError):
      q.coerce(3)
    with self.assertRaises(ValueError):
      q.coerce(True)
    with self.assertRaises(ValueError):
      quantale.UNIT.coerce(F(3, 2))

  def test_parse_value(self):
    self.assertEqual(quantale.lukasiewicz(8).parse_value('inf'), 8)
    self.assertEqual(quantale.UNIT.parse_value(' 1/2 '), F(1, 2))
    with self.assertRaisesRegex(ValueError, 'outside'):
      quantale.lukasiewicz(8).parse_value('9')
    with self.assertRaisesRegex(ValueError, 'Cannot parse'):
      quantale.UNIT.parse_value('half')

  def test_parse_mode(self):
    self.assertEqual(quantale.parse_mode('lukasiewicz 8'),
                     quantale.lukasiewicz(8))
    self.assertEqual(quantale.parse_mode('unit-rational'), quantale.UNIT)
    self.assertEqual(str(quantale.lukasiewicz(8)), 'lukasiewicz 8')
    with self.assertRaises(ValueError):
      quantale.parse_mode('lukasiewicz')

  def test_tagged_values_reject_mixed_modes(self):
    a = quantale.QuantaleValue(quantale.lukasiewicz(2), 1)
    b = quantale.QuantaleValue(quantale.lukasiewicz(3), 1)
    with self.assertRaises(quantale.ModeMismatchError):
      quantale.tensor(a, b)
    with self.assertRaises(quantale.ModeMismatchError):
      _ = a <= b

  def test_tagged_operations(self):
    q = quantale.lukasiewicz(8)
    values = [quantale.QuantaleValue(q, v) for v in (3, 1)]
    self.assertEqual(quantale.join(values).value, 1)
    self.assertEqual(quantale.meet(values).value, 3)
    self.assertEqual(quantale.tensor(*values).value, 4)
    self.assertEqual(quantale.residuate(*values).value, 2)
    self.assertEqual(quantale.join([], q).value, 8)
    with self.assertRaises(ValueError):
      quantale.meet([])


if __name__ == '__main__':
  absltest.main()

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

from absl.testing import absltest
from absl.testing import parameterized

from apxconv import cap
from apxconv import quantale
from apxconv import test_utils
from apxconv import vspace

F = fractions.Fraction


class ValueSpaceTest(parameterized.TestCase):

  @parameterized.named_parameters(
      ('unit', quantale.UNIT, [F(1, 2), F(1, 4)], F(1, 8), F(1, 4)),
      ('lukasiewicz', quantale.lukasiewicz(8), [1, 2], 3, 2),
      ('above_the_base', quantale.UNIT, [F(1, 2)], F(3, 4), 1),
  )
  def test_lambda(self, q, base, v, expected):
    self.assertEqual(vspace.lambda_V(q, base, v).value, expected)

  @parameterized.named_parameters(
      ('unit', quantale.UNIT, [F(1, 2), F(1, 4)], F(1, 8), F(1, 2)),
      ('lukasiewicz', quantale.lukasiewicz(4), [2, 3], 4, 1),
  )
  def test_adherence(self, q, values, v, expected):
    self.assertEqual(vspace.adh_V(q, values, v).value, expected)

  def test_empty_sets_are_rejected(self):
    with self.assertRaises(ValueError):
      vspace.lambda_V(quantale.UNIT, [], 1)
    with self.assertRaises(ValueError):
      vspace.adh_V(quantale.UNIT, [], 1)

  def test_chain_is_an_approach_space(self):
    q = quantale.lukasiewicz(2)
    space = vspace.v_as_cap(q)
    self.assertEqual(space.carrier.elements, ('2', '1', '0'))
    chain = q.elements()
    for i, b in enumerate(chain):
      for j, v in enumerate(chain):
        self.assertEqual(space.a(1 << i, j), q.residuate(v, b))
    self.assertTrue(cap.validate(space).ok)
    self.assertTrue(cap.is_approach(space))

  def test_unit_samples(self):
    with self.assertRaises(ValueError):
      vspace.v_as_cap(quantale.UNIT)
    space = vspace.sample_as_cap(quantale.UNIT, [1, F(1, 2), 0, F(1, 4)])
    self.assertEqual(space.carrier.elements, ('0', '1/4', '1/2', '1'))
    self.assertTrue(cap.is_approach(space))

  def test_whole_chain_diagonal(self):
    self.assertTrue(vspace.diagonal_witness(quantale.lukasiewicz(3)))
    with self.assertRaises(ValueError):
      vspace.diagonal_witness(quantale.UNIT)


class ClosureMapsTest(absltest.TestCase):

  def test_initial_structure_is_the_approach_reflection(self):
    space = test_utils.k3()
    self.assertEqual(vspace.initial_from_closures(space),
                     cap.ap_reflection(space))

  def test_approach_spaces_are_initial(self):
    space = test_utils.mline()
    self.assertEqual(vspace.initial_from_closures(space), space)

  def test_unit_space(self):
    space = cap.ap_reflection(test_utils.n2())
    self.assertEqual(vspace.initial_from_closures(space), space)

  def test_closure_maps(self):
    space = test_utils.k3()
    sample, maps = vspace.closure_maps(space)
    self.assertLen(maps, 8)
    self.assertTrue(cap.is_approach(sample))
    self.assertIn('4', sample.carrier.elements)
    self.assertTrue(vspace.initial_inequality_witness(space))


if __name__ == '__main__':
  absltest.main()

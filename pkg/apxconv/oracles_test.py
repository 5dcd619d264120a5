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

from apxconv import cap
from apxconv import oracles
from apxconv import quantale
from apxconv import test_utils


class OraclesTest(absltest.TestCase):

  def test_brute_force_hull(self):
    space = test_utils.k3()
    self.assertTrue(oracles.can_enumerate(space))
    continuous = oracles.continuous_functions(space)
    for mask in space.carrier.subsets():
      f = cap.theta(space, mask)
      self.assertEqual(oracles.brute_force_hull(space, f, continuous),
                       cap.hull(space, f))

  def test_enumeration_bound(self):
    self.assertFalse(oracles.can_enumerate(test_utils.n2()))
    self.assertFalse(oracles.can_enumerate(
        cap.from_metric(range(5), quantale.lukasiewicz(8))))

  def test_approach_oracles_agree(self):
    for space in (test_utils.k3(), test_utils.k3_chain2(), test_utils.mline(),
                  test_utils.n2()):
      expected = cap.is_approach(space).holds
      self.assertEqual(oracles.is_approach_by_matrix(space), expected)
      if space.quantale.is_finite:
        self.assertEqual(oracles.is_approach_full_chain(space), expected)

  def test_adherence_continuity(self):
    space = test_utils.k3()
    for mask in space.carrier.nonempty_subsets():
      self.assertTrue(oracles.adh_continuity_matches_diagonal(space, mask))
    self.assertFalse(cap.is_continuous_to_V(space, cap.adh_set(space, 0b100)))

  def test_brute_force_adherence_of_v(self):
    q = quantale.UNIT
    self.assertEqual(
        oracles.brute_force_adh_V(q, [q.parse_value('1/2'),
                                      q.parse_value('1/4')],
                                  q.parse_value('1/8')),
        q.parse_value('1/2'))


if __name__ == '__main__':
  absltest.main()

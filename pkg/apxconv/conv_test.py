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

from apxconv import conv
from apxconv import finset
from apxconv import test_utils


class ConvergenceTest(parameterized.TestCase):

  def setUp(self):
    super().setUp()
    self.xi = test_utils.k3r()
    self.c = self.xi.carrier

  def test_hand_built_convergence_is_valid(self):
    self.assertTrue(conv.validate(self.xi).ok)
    self.assertEqual(self.xi.lim(0), self.c.full)

  def test_uncentered_convergence_is_reported(self):
    limits = list(self.xi.limits)
    limits[0b001] = 0
    report = conv.validate(conv.FiniteConvergence(self.c, limits))
    self.assertFalse(report.ok)
    self.assertIn({'axiom': 'centered', 'x': 'p'}, report.violations)

  def test_non_monotone_convergence_is_reported(self):
    limits = list(self.xi.limits)
    limits[0b011] = 0b111
    report = conv.validate(conv.FiniteConvergence(self.c, limits))
    self.assertIn({'axiom': 'monotone', 'B': '{p}', 'B_prime': '{p,q}'},
                  report.violations)

  def test_adherence_and_closure(self):
    self.assertEqual(conv.adh_set(self.xi, 0b100), 0b110)
    self.assertEqual(conv.adh_set(self.xi, 0), 0)
    self.assertEqual(conv.closure_set(self.xi, 0b100), 0b111)
    self.assertEqual(conv.closure_set(self.xi, 0b001), 0b001)

  def test_closed_and_open_sets(self):
    self.assertEqual(conv.closed_sets(self.xi), (0b000, 0b001, 0b011, 0b111))
    self.assertEqual(conv.open_sets(self.xi), (0b000, 0b100, 0b110, 0b111))
    self.assertTrue(conv.is_open(self.xi, 0b110))

  def test_reflections(self):
    self.assertTrue(conv.is_pretopological(self.xi))
    self.assertFalse(conv.is_topological(self.xi))
    tau = conv.topo_reflection(self.xi)
    self.assertTrue(conv.is_topological(tau))
    self.assertEqual(tau.lim(0b100), 0b111)
    self.assertTrue(conv.finer_than(self.xi, tau))
    self.assertFalse(conv.finer_than(tau, self.xi))
    self.assertEqual(conv.pretop_reflection(self.xi), self.xi)

  def test_continuity(self):
    identity = finset.PointMap.identity(self.c)
    self.assertTrue(conv.continuous(identity, self.xi, self.xi))
    tau = conv.topo_reflection(self.xi)
    self.assertTrue(conv.continuous(identity, self.xi, tau))
    verdict = conv.continuity_witness(identity, tau, self.xi)
    self.assertFalse(verdict.holds)
    self.assertEqual(verdict.witness, {'B': '{r}', 'x': 'p'})
    constant = finset.PointMap.constant(self.c, self.c, 2)
    self.assertTrue(conv.continuous(constant, self.xi, self.xi))

  @parameterized.named_parameters(
      ('identity', (0, 1, 2), None),
      ('constant', (1, 1, 1), None),
      ('swap_p_r', (2, 1, 0), {'B': '{q}', 'x': 'p'}),
      ('swap_p_q', (1, 0, 2), {'B': '{q}', 'x': 'p'}),
  )
  def test_self_maps(self, images, witness):
    f = finset.PointMap(self.c, self.c, images)
    verdict = conv.continuity_witness(f, self.xi, self.xi)
    self.assertEqual(verdict.holds, witness is None)
    if witness is not None:
      self.assertEqual(verdict.witness, witness)

  def test_format(self):
    self.assertIn('lim {q} = {p,q}', self.xi.format())


class PretopReflectionTest(parameterized.TestCase):

  def setUp(self):
    super().setUp()
    self.c = test_utils.carrier()
    points = {0b001: 0b101, 0b010: 0b110, 0b100: 0b100}
    self.xi = conv.FiniteConvergence.from_function(
        self.c, lambda b: points.get(b, 0))

  def test_input_is_a_convergence(self):
    self.assertTrue(conv.validate(self.xi).ok)
    self.assertFalse(conv.is_pretopological(self.xi))

  @parameterized.parameters(
      ('{p}', '{p,r}'),
      ('{q}', '{q,r}'),
      ('{r}', '{r}'),
      ('{p,q}', '{r}'),
      ('{p,r}', '{r}'),
      ('{q,r}', '{r}'),
      ('{p,q,r}', '{r}'),
  )
  def test_limits_are_intersections_of_point_adherences(self, base, expected):
    s0 = conv.pretop_reflection(self.xi)
    lim = s0.lim(self.c.parse_subset(base))
    self.assertEqual(self.c.format_subset(lim), expected)

  def test_reflection_is_pretopological(self):
    s0 = conv.pretop_reflection(self.xi)
    self.assertTrue(conv.is_pretopological(s0))
    self.assertTrue(conv.finer_than(self.xi, s0))
    self.assertEqual(self.xi.lim(0b011), 0)


if __name__ == '__main__':
  absltest.main()

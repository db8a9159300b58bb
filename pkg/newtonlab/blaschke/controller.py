"""
This is the Blaschke controller, which builds disk models for the CLI and assembles the ``blaschke`` report.
"""
from __future__ import annotations

import logging

from newtonlab.blaschke.model import blaschkemodel
from newtonlab.blaschke.model.blaschkemodel import BlaschkeModel
from newtonlab.errors import NewtonLabError


class BlaschkeController:
    """
    Contains static methods for building and checking disk models.
    """

    #: The current model
    MODEL: BlaschkeModel | None = None

    @staticmethod
    def build_model(k: int, target_multiplier: float | None = None) -> tuple[bool, str] | tuple[bool, BlaschkeModel]:
        """
        Build the parabolic model ``P_k``, or the attracting model with the given multiplier.

        :param k: the degree.
        :param target_multiplier: the multiplier at the attracting fixed point; None for the parabolic model.

        :returns:

            -success (:py:class:`bool`) - true if the model is built.

            -data (:py:class:`str` | :py:class:`BlaschkeModel`) - error message on failure, or the model.

        """
        try:
            if target_multiplier is None:
                BlaschkeController.MODEL = blaschkemodel.parabolic_blaschke(k)
            else:
                BlaschkeController.MODEL = blaschkemodel.solve_b_for_multiplier(k, target_multiplier)
        except NewtonLabError as e:
            error = 'Failed to build Blaschke model: {}'.format(e)
            logging.critical(error)
            return False, error
        debug_msg = 'Blaschke model built: {}'.format(BlaschkeController.MODEL)
        logging.debug(debug_msg)
        return True, BlaschkeController.MODEL

    @staticmethod
    def build_report() -> dict:
        """
        Assemble the ``blaschke`` report for the current model: ``k``, ``b``, ``alpha``, ``multiplier``,
        ``multiplier_at_one`` and the ``triple_root_check`` of the parabolic member of the same degree.

        :return: the report.
        """
        model = BlaschkeController.MODEL
        check = blaschkemodel.verify_triple_root(model.k)
        if not check['passed']:
            logging.warning('Triple root check failed for k={}: remainder {}'.format(model.k, check['remainder_norm']))
        report = model.to_dict()
        report['multiplier_at_one'] = blaschkemodel.multiplier_at_one(model)
        report['triple_root_check'] = {
            'passed': check['passed'],
            'remainder_norm': check['remainder_norm'],
            'second_derivative': check['second_derivative']
        }
        return report
